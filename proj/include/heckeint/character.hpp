#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heckeint/cyclotomic.hpp"

namespace heckeint {

/// Dirichlet character mod N given by exponents: chi(a) = zeta_order^e(a).
class DirichletChar {
 public:
  static DirichletChar trivial(int64_t modulus);
  /// `exps` lists e(a) for the units a of Z/N in ascending order.
  /// Throws unless the data defines a homomorphism.
  DirichletChar(int64_t modulus, int64_t order, std::vector<int64_t> exps);

  int64_t modulus() const { return modulus_; }
  int64_t order() const { return order_; }
  bool is_trivial() const;
  /// chi(a); zero when gcd(a, N) != 1.
  CycInt operator()(int64_t a) const;
  /// e(a) for a unit a.
  int64_t exponent(int64_t a) const;
  const std::vector<int64_t>& exponents() const { return exps_; }

 private:
  int64_t modulus_, order_;
  std::vector<int64_t> units_, exps_;
};

/// Units of Z/N in ascending order ({0} stands in for the trivial group at N=1).
std::vector<int64_t> units_mod(int64_t modulus);

/// (chi_1, ..., chi_n). Text: "trivial" or "<ord>/<e..>/<e..>" with one
/// comma-separated exponent list per component.
struct CharacterTuple {
  std::vector<DirichletChar> chars;

  static CharacterTuple trivial(int n, int64_t modulus);
  static CharacterTuple parse(const std::string& spec, int n, int64_t modulus);
  std::string str() const;
  bool is_trivial() const;
  int64_t common_order() const;
};

}  // namespace heckeint
