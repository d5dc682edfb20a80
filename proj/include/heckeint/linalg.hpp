#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "heckeint/matrix.hpp"

namespace heckeint {

struct SmithForm {
  IntMat u, s, v;  // u * m * v == s
  size_t rank = 0;
  std::vector<BigInt> divisors() const;
};

/// Smith normal form of an arbitrary integer matrix with reproducible
/// transforms: smallest-absolute-value pivot, first in row-major order.
SmithForm smith_form(const IntMat& m);

/// Smith form of a square nonsingular matrix; throws ErrorKind::singular.
SmithForm snf(const IntMat& m);

/// Elementary divisors only, machine integers, no transforms.
std::vector<int64_t> smith_diagonal(SmallMat m);

/// Row-style Hermite normal form of the row lattice: upper echelon, positive
/// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
IntMat hnf_rows(const IntMat& a);

/// Z-basis (as rows) of {x in Z^n : m x = 0}, in Hermite normal form.
IntMat integer_kernel(const IntMat& m);

/// Gaussian elimination over a field (BigRat or CycInt).
template <class T>
struct RowEchelon {
  Matrix<T> reduced;             // reduced row echelon form
  std::vector<size_t> pivots;    // pivot column per nonzero row
  size_t rank() const { return pivots.size(); }
};

template <class T>
RowEchelon<T> row_echelon(const Matrix<T>& a) {
  RowEchelon<T> out{a, {}};
  Matrix<T>& m = out.reduced;
  size_t row = 0;
  for (size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    size_t piv = m.rows();
    for (size_t r = row; r < m.rows(); ++r)
      if (!(m(r, c) == 0)) {
        piv = r;
        break;
      }
    if (piv == m.rows()) continue;
    if (piv != row)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    T inv = T(1) / m(row, c);
    for (size_t j = c; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c) == 0) continue;
      T f = m(r, c);
      for (size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) - f * m(row, j);
    }
    out.pivots.push_back(c);
    ++row;
  }
  return out;
}

template <class T>
size_t rank(const Matrix<T>& a) {
  return row_echelon(a).rank();
}

/// A nonzero x with x * a == 0 (left kernel vector), if the rows are dependent.
template <class T>
std::optional<std::vector<T>> left_dependency(const Matrix<T>& a) {
  size_t k = a.rows();
  Matrix<T> aug(k, a.cols() + k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols() + i) = T(1);
  }
  auto ech = row_echelon(aug);
  for (size_t r = 0; r < ech.rank(); ++r) {
    if (ech.pivots[r] < a.cols()) continue;
    std::vector<T> x(k);
    for (size_t i = 0; i < k; ++i) x[i] = ech.reduced(r, a.cols() + i);
    return x;
  }
  return std::nullopt;
}

/// Solves x * a == b for a row vector x; nullopt when inconsistent.
template <class T>
std::optional<std::vector<T>> solve_left(const Matrix<T>& a, const std::vector<T>& b) {
  // x a = b  <=>  a^t x^t = b^t
  Matrix<T> at = a.transpose();
  Matrix<T> aug(at.rows(), at.cols() + 1);
  for (size_t i = 0; i < at.rows(); ++i) {
    for (size_t j = 0; j < at.cols(); ++j) aug(i, j) = at(i, j);
    aug(i, at.cols()) = b[i];
  }
  auto ech = row_echelon(aug);
  std::vector<T> x(at.cols(), T(0));
  for (size_t r = 0; r < ech.rank(); ++r) {
    if (ech.pivots[r] == at.cols()) return std::nullopt;
    x[ech.pivots[r]] = ech.reduced(r, at.cols());
  }
  return x;
}

}  // namespace heckeint
