#include "heckeint/linalg.hpp"

#include <cstdlib>

namespace heckeint {

namespace {

BigInt fdiv(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

template <class T>
void swap_rows(Matrix<T>& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}
template <class T>
void swap_cols(Matrix<T>& m, size_t a, size_t b) {
  if (a == b) return;
  for (size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}
// row_dst += f * row_src
template <class T>
void add_row(Matrix<T>& m, size_t dst, size_t src, const T& f) {
  for (size_t j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}
template <class T>
void add_col(Matrix<T>& m, size_t dst, size_t src, const T& f) {
  for (size_t i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

std::vector<BigInt> SmithForm::divisors() const {
  std::vector<BigInt> d;
  for (size_t i = 0; i < rank; ++i) d.push_back(s(i, i));
  return d;
}

SmithForm smith_form(const IntMat& m) {
  size_t rows = m.rows(), cols = m.cols();
  SmithForm f{IntMat::identity(rows), m, IntMat::identity(cols), 0};
  IntMat& s = f.s;
  size_t lim = std::min(rows, cols);
  for (size_t t = 0; t < lim; ++t) {
    bool any = false;
    for (;;) {
      size_t pi = rows, pj = cols;
      BigInt best;
      for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j) {
          if (s(i, j) == 0) continue;
          BigInt a = abs(s(i, j));
          if (pi == rows || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) break;
      any = true;
      swap_rows(s, t, pi);
      swap_rows(f.u, t, pi);
      swap_cols(s, t, pj);
      swap_cols(f.v, t, pj);
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        BigInt q = -fdiv(s(i, t), s(t, t));
        add_row(s, i, t, q);
        add_row(f.u, i, t, q);
        if (s(i, t) != 0) clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        BigInt q = -fdiv(s(t, j), s(t, t));
        add_col(s, j, t, q);
        add_col(f.v, j, t, q);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      size_t bad = rows;
      for (size_t i = t + 1; i < rows && bad == rows; ++i)
        for (size_t j = t + 1; j < cols; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row(s, t, bad, BigInt(1));
      add_row(f.u, t, bad, BigInt(1));
    }
    if (!any) break;
    if (s(t, t) < 0) {
      for (size_t j = 0; j < cols; ++j) s(t, j) = -s(t, j);
      for (size_t j = 0; j < rows; ++j) f.u(t, j) = -f.u(t, j);
    }
    f.rank = t + 1;
  }
  return f;
}

SmithForm snf(const IntMat& m) {
  require(m.square(), "snf requires a square matrix");
  SmithForm f = smith_form(m);
  if (f.rank < m.rows()) fail(ErrorKind::singular, "snf: singular matrix " + format_matrix(m));
  return f;
}

std::vector<int64_t> smith_diagonal(SmallMat s) {
  size_t rows = s.rows(), cols = s.cols();
  std::vector<int64_t> d;
  size_t lim = std::min(rows, cols);
  for (size_t t = 0; t < lim; ++t) {
    bool any = false;
    for (;;) {
      size_t pi = rows, pj = cols;
      int64_t best = 0;
      for (size_t i = t; i < rows; ++i)
        for (size_t j = t; j < cols; ++j) {
          int64_t a = std::llabs(s(i, j));
          if (a && (pi == rows || a < best)) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) break;
      any = true;
      swap_rows(s, t, pi);
      swap_cols(s, t, pj);
      bool clean = true;
      for (size_t i = t + 1; i < rows; ++i) {
        if (!s(i, t)) continue;
        add_row(s, i, t, -floor_div(s(i, t), s(t, t)));
        if (s(i, t)) clean = false;
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (!s(t, j)) continue;
        add_col(s, j, t, -floor_div(s(t, j), s(t, t)));
        if (s(t, j)) clean = false;
      }
      if (!clean) continue;
      size_t bad = rows;
      for (size_t i = t + 1; i < rows && bad == rows; ++i)
        for (size_t j = t + 1; j < cols; ++j)
          if (s(i, j) % s(t, t)) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      add_row(s, t, bad, int64_t(1));
    }
    if (!any) break;
    d.push_back(std::llabs(s(t, t)));
  }
  return d;
}

IntMat hnf_rows(const IntMat& a) {
  IntMat m = a;
  size_t rows = m.rows(), cols = m.cols(), row = 0;
  for (size_t c = 0; c < cols && row < rows; ++c) {
    for (;;) {
      size_t piv = rows;
      for (size_t r = row; r < rows; ++r)
        if (m(r, c) != 0 && (piv == rows || abs(m(r, c)) < abs(m(piv, c)))) piv = r;
      if (piv == rows) break;
      swap_rows(m, row, piv);
      bool clean = true;
      for (size_t r = row + 1; r < rows; ++r) {
        if (m(r, c) == 0) continue;
        add_row(m, r, row, BigInt(-fdiv(m(r, c), m(row, c))));
        if (m(r, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m(row, c) == 0) continue;
    if (m(row, c) < 0)
      for (size_t j = 0; j < cols; ++j) m(row, j) = -m(row, j);
    for (size_t r = 0; r < row; ++r) {
      BigInt q = fdiv(m(r, c), m(row, c));
      if (q != 0) add_row(m, r, row, BigInt(-q));
    }
    ++row;
  }
  return m.block(0, 0, row, cols);
}

IntMat integer_kernel(const IntMat& m) {
  SmithForm f = smith_form(m);
  size_t n = m.cols();
  IntMat k(n - f.rank, n);
  for (size_t j = f.rank; j < n; ++j)
    for (size_t i = 0; i < n; ++i) k(j - f.rank, i) = f.v(i, j);
  if (k.rows() == 0) return k;
  return hnf_rows(k);
}

}  // namespace heckeint
