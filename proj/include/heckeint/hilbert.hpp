#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "heckeint/character.hpp"
#include "heckeint/cyclotomic.hpp"

namespace heckeint {

/// Q (d = 1) or the real quadratic field Q(sqrt d), d squarefree.
/// O = Z[w] with w^2 = tr*w - nm.
class QuadField {
 public:
  explicit QuadField(int64_t d);
  int64_t d() const { return d_; }
  int degree() const { return d_ == 1 ? 1 : 2; }
  int64_t discriminant() const;
  int64_t trace_w() const { return tr_; }
  int64_t norm_w() const { return nm_; }
  bool operator==(const QuadField& o) const { return d_ == o.d_; }

 private:
  int64_t d_, tr_ = 0, nm_ = 0;
};

/// Ideal Z a + Z (b + c w) in Hermite form: a, c > 0, c | a, c | b, 0 <= b < a.
/// Over Q the ideal (a) is stored as a, b = 0, c = 1.
class QuadIdeal {
 public:
  QuadIdeal() = default;
  /// Checks the Hermite conditions and closure under w.
  QuadIdeal(const QuadField& f, int64_t a, int64_t b, int64_t c);
  static QuadIdeal unit(const QuadField& f);
  /// Ideal generated by the given elements x + y w.
  static QuadIdeal generated(const QuadField& f, const std::vector<std::pair<int64_t, int64_t>>& gens);

  const QuadField& field() const { return field_; }
  int64_t a() const { return a_; }
  int64_t b() const { return b_; }
  int64_t c() const { return c_; }
  int64_t norm() const { return field_.degree() == 1 ? a_ : a_ * c_; }
  bool contains(int64_t x, int64_t y) const;
  /// this | o, i.e. o is contained in this.
  bool divides(const QuadIdeal& o) const;
  bool is_unit() const { return norm() == 1; }
  QuadIdeal conj() const;
  std::string str() const;

  bool operator==(const QuadIdeal& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }
  bool operator<(const QuadIdeal& o) const;

 private:
  std::vector<std::pair<int64_t, int64_t>> gens() const;
  QuadField field_{1};
  int64_t a_ = 1, b_ = 0, c_ = 1;
};

QuadIdeal operator*(const QuadIdeal& x, const QuadIdeal& y);
QuadIdeal ideal_sum(const QuadIdeal& x, const QuadIdeal& y);
/// x / y for y | x; throws otherwise.
QuadIdeal ideal_quotient(const QuadIdeal& x, const QuadIdeal& y);
/// All ideals of norm n.
std::vector<QuadIdeal> ideals_of_norm(const QuadField& f, int64_t n);
/// All ideals with norm <= bound, ascending.
std::vector<QuadIdeal> ideals_up_to(const QuadField& f, int64_t bound);
/// All a with m + p contained in a.
std::vector<QuadIdeal> divisors_of_sum(const QuadIdeal& m, const QuadIdeal& p);
bool is_prime_ideal(const QuadIdeal& p);
/// Prime ideals over the rational prime p (p <= 10^4).
std::vector<QuadIdeal> primes_over(const QuadField& f, int64_t p);

/// Character on ideals: over Q a Dirichlet character mod N evaluated at the
/// positive generator; over a quadratic field the trivial character mod (N).
struct IdealCharacter {
  int64_t level = 1;
  CharacterTuple chi;  // one component, used over Q only
  CycInt operator()(const QuadIdeal& a) const;
  std::string str() const;
};

struct IdealCoeffMap {
  QuadField field{1};
  int k0 = 2;
  IdealCharacter chi;
  std::map<QuadIdeal, CycInt> values;
};

/// C(m, T'(p) f) = sum_{a | m + p} chi(a) N(a)^(k0-1) C(a^-2 m p, f) on `support`.
/// Missing inputs are reported together as ErrorKind::missing_indices.
IdealCoeffMap hecke_prime(const IdealCoeffMap& c, const QuadIdeal& p, const std::vector<QuadIdeal>& support);
/// Ideals the recursion reads for the given outputs.
std::vector<QuadIdeal> hecke_prime_needs(const QuadIdeal& p, const std::vector<QuadIdeal>& support);

/// T'(p) T'(q) C == T'(q) T'(p) C on `support`.
bool commute_check(const IdealCoeffMap& c, const QuadIdeal& p, const QuadIdeal& q,
                   const std::vector<QuadIdeal>& support);

IdealCoeffMap parse_hilbert(const std::string& text);
std::string write_hilbert(const IdealCoeffMap& m);

}  // namespace heckeint
