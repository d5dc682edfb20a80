#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heckeint/arith.hpp"

namespace heckeint {

/// Integer coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<BigInt>& cyclotomic_polynomial(int64_t n);

/// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi(N)-1).
///
/// Rational elements are always stored with conductor 1, so any two
/// rational values compare equal regardless of where they came from.
/// Mixed-conductor arithmetic promotes both operands to the lcm.
class CycInt {
 public:
  CycInt() : conductor_(1), coords_{BigRat(0)} {}
  CycInt(long v) : conductor_(1), coords_{BigRat(v)} {}  // NOLINT(runtime/explicit)
  CycInt(const BigInt& v) : conductor_(1), coords_{BigRat(v)} {}  // NOLINT
  CycInt(const BigRat& v) : conductor_(1), coords_{v} {}  // NOLINT

  static CycInt zeta(int64_t n, int64_t k = 1);
  static CycInt from_coords(int64_t n, std::vector<BigRat> coords);

  int64_t conductor() const { return conductor_; }
  const std::vector<BigRat>& coords() const { return coords_; }

  bool is_zero() const;
  bool is_rational() const { return conductor_ == 1; }
  /// Throws unless the element is rational.
  const BigRat& rational() const;
  /// Exact: the power basis is an integral basis of Z[zeta_N].
  bool is_algebraic_integer() const;

  CycInt conj() const;
  CycInt embed(int64_t m) const;
  /// Power-basis coordinates after embedding into Q(zeta_m).
  std::vector<BigRat> coords_in(int64_t m) const;
  CycInt inverse() const;

  CycInt& operator+=(const CycInt& o);
  CycInt& operator-=(const CycInt& o);
  CycInt& operator*=(const CycInt& o);
  CycInt operator+(const CycInt& o) const { CycInt r = *this; return r += o; }
  CycInt operator-(const CycInt& o) const { CycInt r = *this; return r -= o; }
  CycInt operator*(const CycInt& o) const { CycInt r = *this; return r *= o; }
  CycInt operator/(const CycInt& o) const { return *this * o.inverse(); }
  CycInt operator-() const;

  bool operator==(const CycInt& o) const;
  bool operator!=(const CycInt& o) const { return !(*this == o); }
  bool operator==(long v) const { return is_rational() && coords_[0] == v; }

  /// "5", "-3/4" for rationals; "[c0,c1,...]" otherwise.
  std::string str() const;

 private:
  void normalize();

  int64_t conductor_;
  std::vector<BigRat> coords_;
};

/// sum_t counts[t] * zeta_M^t with M = counts.size(), computed in integers.
CycInt root_sum(const std::vector<int64_t>& counts);

enum class CycOp { add, mul, conj, embed };

/// Dispatcher over the basic operations; `embed` promotes `a` to the
/// conductor of `b`, which must be a multiple of it.
CycInt cyclotomic_op(const CycInt& a, const CycInt& b, CycOp op);

}  // namespace heckeint
