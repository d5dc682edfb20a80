#pragma once

#include <string>
#include <vector>

#include "heckeint/cyclotomic.hpp"
#include "heckeint/matrix.hpp"

namespace heckeint {

/// Polynomial with coefficients constant term first.
template <class T>
struct MonicPoly {
  std::vector<T> coeffs;

  size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }
};

using RatPoly = MonicPoly<BigRat>;
using CycPoly = MonicPoly<CycInt>;

/// det(X*id - m) by Berkowitz's division-free recurrence.
template <class T>
MonicPoly<T> charpoly(const Matrix<T>& m) {
  require(m.square(), "charpoly of non-square matrix");
  size_t n = m.rows();
  std::vector<T> c{T(1)};  // highest degree first
  for (size_t r = 1; r <= n; ++r) {
    size_t k = r - 1;
    std::vector<T> t(r + 1, T(0));
    t[0] = T(1);
    t[1] = T(0) - m(k, k);
    std::vector<T> v(k);
    for (size_t i = 0; i < k; ++i) v[i] = m(i, k);
    for (size_t i = 2; i <= r; ++i) {
      T dot(0);
      for (size_t j = 0; j < k; ++j) dot += m(k, j) * v[j];
      t[i] = T(0) - dot;
      std::vector<T> w(k, T(0));
      for (size_t a = 0; a < k; ++a)
        for (size_t b = 0; b < k; ++b) w[a] += m(a, b) * v[b];
      v = std::move(w);
    }
    std::vector<T> next(r + 1, T(0));
    for (size_t i = 0; i <= r; ++i)
      for (size_t j = 0; j <= i && j < r; ++j) next[i] += t[i - j] * c[j];
    c = std::move(next);
  }
  return MonicPoly<T>{std::vector<T>(c.rbegin(), c.rend())};
}

template <class T>
Matrix<T> evaluate_at(const MonicPoly<T>& p, const Matrix<T>& m) {
  size_t n = m.rows();
  Matrix<T> acc(n, n);
  for (size_t i = p.coeffs.size(); i-- > 0;) {
    acc = acc * m;
    for (size_t d = 0; d < n; ++d) acc(d, d) += p.coeffs[i];
  }
  return acc;
}

/// True iff every coefficient is a (rational or cyclotomic) algebraic integer.
/// Throws on a non-monic polynomial.
bool is_integral(const RatPoly& p);
bool is_integral(const CycPoly& p);

/// "X^2 - 2025X - 49176"
std::string format_poly(const RatPoly& p);
std::string format_poly(const CycPoly& p);

/// Factorization over Z of a monic integer polynomial of degree <= 4 into
/// monic irreducibles (rational roots, then quadratic pairs). Returns an
/// empty list when the input is out of range.
std::vector<RatPoly> factor_small_degree(const RatPoly& p);

}  // namespace heckeint
