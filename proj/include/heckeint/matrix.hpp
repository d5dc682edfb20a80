#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "heckeint/arith.hpp"
#include "heckeint/error.hpp"

namespace heckeint {

/// Dense row-major matrix over a commutative ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(size_t rows, size_t cols, std::vector<T> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    require(data_.size() == rows * cols, "matrix data size mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      require(r.size() == cols_, "ragged matrix literal");
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& o) const {
    require(cols_ == o.rows_, "matrix product dimension mismatch");
    Matrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum dimension mismatch");
    Matrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference dimension mismatch");
    Matrix r = *this;
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }
  Matrix scaled(const T& s) const {
    Matrix r = *this;
    for (auto& x : r.data_) x *= s;
    return r;
  }
  std::vector<T> apply(const std::vector<T>& v) const {
    require(v.size() == cols_, "matrix-vector dimension mismatch");
    std::vector<T> r(rows_, T(0));
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }
  bool operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return data_ < o.data_;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!(x == 0)) return false;
    return true;
  }

  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    Matrix b(nr, nc);
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(size_t r0, size_t c0, const Matrix& b) {
    for (size_t i = 0; i < b.rows(); ++i)
      for (size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMat = Matrix<BigInt>;
using RatMat = Matrix<BigRat>;
using SmallMat = Matrix<int64_t>;

RatMat to_rat(const IntMat& m);
IntMat to_big(const SmallMat& m);
/// Converts to machine integers; throws when an entry does not fit.
SmallMat to_small(const IntMat& m);
/// Converts a rational matrix with integer entries; throws otherwise.
IntMat to_int(const RatMat& m);
bool is_integral(const RatMat& m);

BigInt determinant(const IntMat& m);
BigRat determinant(const RatMat& m);
/// Exact inverse over Q; throws ErrorKind::singular.
RatMat inverse(const RatMat& m);

std::string format_matrix(const IntMat& m);
std::string format_matrix(const RatMat& m);

}  // namespace heckeint
