#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "heisenleib/matrix.hpp"

namespace heisenleib {

/// Structure constants of a finite-dimensional algebra:
/// [e_i, e_j] = sum_k c(i, j, k) e_k.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::size_t dim, std::vector<std::string> labels = {})
      : dim_(dim), labels_(std::move(labels)), c_(dim * dim * dim) {
    if (dim == 0) throw DomainError("algebra dimension must be positive");
    if (labels_.empty()) {
      for (std::size_t i = 0; i < dim; ++i) labels_.push_back("e" + std::to_string(i + 1));
    }
    if (labels_.size() != dim) throw ShapeError("basis label count does not match dimension");
  }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  T& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  /// Coordinates of [e_i, e_j].
  Vec<T> product(std::size_t i, std::size_t j) const {
    return Vec<T>(c_.begin() + static_cast<std::ptrdiff_t>((i * dim_ + j) * dim_),
                  c_.begin() + static_cast<std::ptrdiff_t>((i * dim_ + j + 1) * dim_));
  }
  void set_product(std::size_t i, std::size_t j, const Vec<T>& value) {
    if (value.size() != dim_) throw ShapeError("product vector length mismatch");
    for (std::size_t k = 0; k < dim_; ++k) (*this)(i, j, k) = value[k];
  }

  template <class F>
  Tensor transformed(F&& f) const {
    Tensor out = *this;
    for (auto& x : out.c_) x = f(x);
    return out;
  }

  /// Equality of constants only; labels are presentation.
  friend bool operator==(const Tensor& x, const Tensor& y) { return x.dim_ == y.dim_ && x.c_ == y.c_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<T> c_;
};

using StructTensor = Tensor<Scalar>;
using ParamTensor = Tensor<PolyQ>;

template <class T>
Vec<T> basis_vector(std::size_t dim, std::size_t i) {
  Vec<T> v(dim);
  v.at(i) = T(1);
  return v;
}

/// sum_{i,j} x_i y_j c(i, j, .)
template <class T>
Vec<T> bracket(const Tensor<T>& t, const Vec<T>& x, const Vec<T>& y) {
  const std::size_t n = t.dim();
  if (x.size() != n || y.size() != n) throw ShapeError("bracket operand length does not match dimension");
  Vec<T> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      const T w = x[i] * y[j];
      for (std::size_t k = 0; k < n; ++k) {
        const T& c = t(i, j, k);
        if (!c.is_zero()) out[k] += w * c;
      }
    }
  }
  return out;
}

/// [e_i, v]
template <class T>
Vec<T> bracket_left_basis(const Tensor<T>& t, std::size_t i, const Vec<T>& v) {
  const std::size_t n = t.dim();
  Vec<T> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    if (v[m].is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const T& c = t(i, m, k);
      if (!c.is_zero()) out[k] += v[m] * c;
    }
  }
  return out;
}

/// [v, e_k]
template <class T>
Vec<T> bracket_right_basis(const Tensor<T>& t, const Vec<T>& v, std::size_t k) {
  const std::size_t n = t.dim();
  Vec<T> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    if (v[m].is_zero()) continue;
    for (std::size_t l = 0; l < n; ++l) {
      const T& c = t(m, k, l);
      if (!c.is_zero()) out[l] += v[m] * c;
    }
  }
  return out;
}

/// [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - [e_j,[e_i,e_k]]
template <class T>
Vec<T> leibniz_residual(const Tensor<T>& t, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t n = t.dim();
  if (i >= n || j >= n || k >= n) throw ShapeError("basis index out of range");
  Vec<T> out = bracket_left_basis(t, i, t.product(j, k));
  const Vec<T> b = bracket_right_basis(t, t.product(i, j), k);
  const Vec<T> c = bracket_left_basis(t, j, t.product(i, k));
  for (std::size_t l = 0; l < n; ++l) {
    out[l] -= b[l];
    out[l] -= c[l];
  }
  return out;
}

/// Rows are new basis vectors in old coordinates: f_i = sum_j p(i, j) e_j.
/// c'(i, j, k) = sum p(i, a) p(j, b) c(a, b, c) q(c, k) with q = p^{-1}.
template <class T>
Tensor<T> change_basis_with_inverse(const Tensor<T>& t, const Matrix<T>& p, const Matrix<T>& q) {
  const std::size_t n = t.dim();
  if (p.rows() != n || p.cols() != n || q.rows() != n || q.cols() != n) {
    throw ShapeError("change of basis matrix has the wrong shape");
  }
  Tensor<T> out(n, t.labels());
  for (std::size_t i = 0; i < n; ++i) {
    const Vec<T> fi = p.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const Vec<T> old = bracket(t, fi, p.row(j));
      for (std::size_t k = 0; k < n; ++k) {
        T acc{};
        for (std::size_t m = 0; m < n; ++m) {
          if (!old[m].is_zero() && !q(m, k).is_zero()) acc += old[m] * q(m, k);
        }
        out(i, j, k) = acc;
      }
    }
  }
  return out;
}

/// Matrix whose row m holds the coordinates of [e_idx, e_rows[m]], restricted
/// to the columns `cols`. This is the row convention in which block forms of
/// left multiplication are usually displayed.
template <class T>
Matrix<T> left_action_rows(const Tensor<T>& t, std::size_t idx, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
  Matrix<T> m(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) m(a, b) = t(idx, rows[a], cols[b]);
  }
  return m;
}

/// Row m holds the coordinates of [e_rows[m], e_idx].
template <class T>
Matrix<T> right_action_rows(const Tensor<T>& t, std::size_t idx, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols) {
  Matrix<T> m(rows.size(), cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) m(a, b) = t(rows[a], idx, cols[b]);
  }
  return m;
}

/// Canonical subspace of F^n: basis in reduced row echelon form.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}
  static Subspace span(std::size_t ambient_dim, const std::vector<Vec<Scalar>>& vectors);
  static Subspace whole(std::size_t ambient_dim);
  static Subspace coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Vec<Scalar>>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  bool is_zero() const noexcept { return basis_.empty(); }

  bool contains(const Vec<Scalar>& v) const;
  bool contains(const Subspace& other) const;
  Subspace operator+(const Subspace& other) const;

  friend bool operator==(const Subspace& x, const Subspace& y) {
    return x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
  }

  std::string to_string(const std::vector<std::string>& labels = {}) const;

 private:
  std::size_t ambient_ = 0;
  std::vector<Vec<Scalar>> basis_;
  std::vector<std::size_t> pivots_;
};

/// span{[u, w] : u in U, w in W}
Subspace bracket_span(const StructTensor& t, const Subspace& u, const Subspace& w);

bool is_leibniz(const StructTensor& t);
/// First triple (in index order) with a nonzero residual.
std::optional<std::array<std::size_t, 3>> first_leibniz_failure(const StructTensor& t);
bool is_lie(const StructTensor& t);

/// Terms L^(1), L^(2), ...; stops after a zero term or a repeated term.
std::vector<Subspace> derived_series(const StructTensor& t);
/// Terms L^2, L^3, ...; same stopping rule.
std::vector<Subspace> lower_central_series(const StructTensor& t);
std::vector<std::size_t> dims(const std::vector<Subspace>& series);
bool is_solvable(const StructTensor& t);
bool is_nilpotent(const StructTensor& t);

Subspace left_annihilator(const StructTensor& t);
/// Elements that annihilate from both sides.
Subspace center(const StructTensor& t);

/// Operator matrices in column convention: column j is [x, e_j] (left) or
/// [e_j, x] (right).
ScalarMatrix left_multiplication(const StructTensor& t, const Vec<Scalar>& x);
ScalarMatrix right_multiplication(const StructTensor& t, const Vec<Scalar>& x);
bool element_nilpotent(const StructTensor& t, const Vec<Scalar>& x);

/// Throws NotInvertibleError for singular p.
StructTensor change_basis(const StructTensor& t, const ScalarMatrix& p);
/// The coordinate map from old to new coordinates, p^{-T}.
ScalarMatrix coordinate_map(const ScalarMatrix& p);

struct ClosureChecks {
  bool is_subalgebra = false;
  bool is_left_ideal = false;
  bool is_two_sided_ideal = false;
};
ClosureChecks subspace_closure_checks(const StructTensor& t, const Subspace& w);

struct Fingerprint {
  std::size_t dim = 0;
  std::vector<std::size_t> derived_dims;
  std::vector<std::size_t> lower_central_dims;
  std::size_t ann_left_dim = 0;
  std::size_t center_dim = 0;
  bool is_lie = false;
  bool is_solvable = false;
  bool is_nilpotent = false;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  std::string to_string() const;
};

Fingerprint fingerprint(const StructTensor& t);

/// Names of the fingerprint fields on which the two records differ.
std::vector<std::string> fingerprint_differences(const Fingerprint& x, const Fingerprint& y);

std::string format_vector(const Vec<Scalar>& v, const std::vector<std::string>& labels);

}  // namespace heisenleib
