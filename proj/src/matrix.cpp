#include "heckeint/matrix.hpp"

#include <sstream>

namespace heckeint {

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = BigRat(m(i, j));
  return r;
}

IntMat to_big(const SmallMat& m) {
  IntMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) r(i, j) = BigInt(static_cast<long>(m(i, j)));
  return r;
}

SmallMat to_small(const IntMat& m) {
  SmallMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).fits_slong_p()) fail(ErrorKind::cap_exceeded, "matrix entry exceeds machine range");
      r(i, j) = m(i, j).get_si();
    }
  return r;
}

IntMat to_int(const RatMat& m) {
  IntMat r(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) fail(ErrorKind::invalid_argument, "matrix has non-integral entry " + to_string(m(i, j)));
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

bool is_integral(const RatMat& m) {
  for (const auto& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

BigRat determinant(const RatMat& m) {
  require(m.square(), "determinant of non-square matrix");
  RatMat a = m;
  size_t n = a.rows();
  BigRat det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == n) return 0;
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      BigRat f = a(r, c) / a(c, c);
      for (size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

BigInt determinant(const IntMat& m) { return determinant(to_rat(m)).get_num(); }

RatMat inverse(const RatMat& m) {
  require(m.square(), "inverse of non-square matrix");
  size_t n = m.rows();
  RatMat a = m, inv = RatMat::identity(n);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t r = c; r < n; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv == n) fail(ErrorKind::singular, "matrix is singular");
    for (size_t j = 0; j < n; ++j) {
      std::swap(a(piv, j), a(c, j));
      std::swap(inv(piv, j), inv(c, j));
    }
    BigRat s = 1 / a(c, c);
    for (size_t j = 0; j < n; ++j) {
      a(c, j) *= s;
      inv(c, j) *= s;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      BigRat f = a(r, c);
      for (size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

template <class T>
static std::string format_any(const Matrix<T>& m) {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << to_string(m(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

std::string format_matrix(const IntMat& m) { return format_any(m); }
std::string format_matrix(const RatMat& m) { return format_any(m); }

}  // namespace heckeint
