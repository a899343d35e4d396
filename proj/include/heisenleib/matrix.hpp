#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "heisenleib/errors.hpp"
#include "heisenleib/poly.hpp"
#include "heisenleib/scalar.hpp"

namespace heisenleib {

template <class T>
using Vec = std::vector<T>;

/// Dense row-major matrix over an exact entry type (Scalar or PolyQ).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw ShapeError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec<T> row(std::size_t i) const {
    return Vec<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  void set_row(std::size_t i, const Vec<T>& values) {
    if (values.size() != cols_) throw ShapeError("row length mismatch");
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = values[j];
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    }
    return b;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

  Matrix& operator+=(const Matrix& rhs) {
    check_same_shape(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& rhs) {
    check_same_shape(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }
  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }
  Matrix scaled(const T& c) const {
    Matrix m = *this;
    for (auto& x : m.data_) x *= c;
    return m;
  }

  friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
  friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw ShapeError("matrix product shape mismatch");
    Matrix p(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i) {
      for (std::size_t k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) {
          if (!y(k, j).is_zero()) p(i, j) += xik * y(k, j);
        }
      }
    }
    return p;
  }

 private:
  void check_same_shape(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ScalarMatrix = Matrix<Scalar>;
using PolyMatrix = Matrix<PolyQ>;

/// Matrix times column vector.
template <class T>
Vec<T> apply(const Matrix<T>& m, const Vec<T>& v) {
  if (m.cols() != v.size()) throw ShapeError("matrix-vector shape mismatch");
  Vec<T> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
    }
  }
  return out;
}

template <class T>
bool is_zero_vector(const Vec<T>& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

/// Cofactor-expansion determinant; intended for the small blocks where the
/// entries are polynomials.
template <class T>
T determinant_expansion(const Matrix<T>& m) {
  if (!m.is_square()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  T total{};
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Matrix<T> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t k = 0, c = 0; k < n; ++k) {
        if (k != j) minor(i - 1, c++) = m(i, k);
      }
    }
    T term = m(0, j) * determinant_expansion(minor);
    if (j % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

// Exact linear algebra over Scalar.

struct RowEchelon {
  ScalarMatrix reduced;              ///< reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   ///< pivot column of each row
};

RowEchelon rref(const ScalarMatrix& m);
std::size_t rank(const ScalarMatrix& m);
/// Basis of {x : m x = 0}.
std::vector<Vec<Scalar>> nullspace(const ScalarMatrix& m);
Scalar determinant(const ScalarMatrix& m);
/// Throws NotInvertibleError when singular.
ScalarMatrix inverse(const ScalarMatrix& m);

ScalarMatrix to_scalar_matrix(const std::vector<std::vector<long>>& rows);
std::string to_string(const ScalarMatrix& m);
std::string to_string(const Vec<Scalar>& v);

}  // namespace heisenleib
