#include "heisenleib/algebra.hpp"

#include <sstream>

#include "heisenleib/nilpotency.hpp"

namespace heisenleib {

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vec<Scalar>>& vectors) {
  Subspace s(ambient_dim);
  if (vectors.empty()) return s;
  ScalarMatrix m(vectors.size(), ambient_dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient_dim) throw ShapeError("vector length does not match ambient dimension");
    m.set_row(i, vectors[i]);
  }
  RowEchelon e = rref(m);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) s.basis_.push_back(e.reduced.row(i));
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::whole(std::size_t ambient_dim) {
  std::vector<std::size_t> all(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) all[i] = i;
  return coordinate(ambient_dim, all);
}

Subspace Subspace::coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices) {
  std::vector<Vec<Scalar>> vs;
  for (auto i : indices) vs.push_back(basis_vector<Scalar>(ambient_dim, i));
  return span(ambient_dim, vs);
}

bool Subspace::contains(const Vec<Scalar>& v) const {
  if (v.size() != ambient_) throw ShapeError("vector length does not match ambient dimension");
  // reduce against the echelon basis
  Vec<Scalar> w = v;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const Scalar c = w[pivots_[r]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < ambient_; ++j) {
      if (!basis_[r][j].is_zero()) w[j] -= c * basis_[r][j];
    }
  }
  return is_zero_vector(w);
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.basis_) {
    if (!contains(v)) return false;
  }
  return true;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw ShapeError("subspaces of different ambient spaces");
  std::vector<Vec<Scalar>> vs = basis_;
  vs.insert(vs.end(), other.basis_.begin(), other.basis_.end());
  return span(ambient_, vs);
}

std::string format_vector(const Vec<Scalar>& v, const std::vector<std::string>& labels) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const std::string name = i < labels.size() ? labels[i] : "e" + std::to_string(i + 1);
    const std::string c = v[i].to_display();
    if (c == "1") {
      os << name;
    } else if (c == "-1") {
      os << "-" << name;
    } else if (v[i].is_rational()) {
      os << c << "*" << name;
    } else {
      os << "(" << c << ")*" << name;
    }
  }
  return first ? "0" : os.str();
}

std::string Subspace::to_string(const std::vector<std::string>& labels) const {
  std::ostringstream os;
  os << "span(";
  for (std::size_t i = 0; i < basis_.size(); ++i) os << (i ? ", " : "") << format_vector(basis_[i], labels);
  os << ")";
  return os.str();
}

Subspace bracket_span(const StructTensor& t, const Subspace& u, const Subspace& w) {
  std::vector<Vec<Scalar>> vs;
  for (const auto& x : u.basis()) {
    for (const auto& y : w.basis()) {
      Vec<Scalar> b = bracket(t, x, y);
      if (!is_zero_vector(b)) vs.push_back(std::move(b));
    }
  }
  return Subspace::span(t.dim(), vs);
}

std::optional<std::array<std::size_t, 3>> first_leibniz_failure(const StructTensor& t) {
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!is_zero_vector(leibniz_residual(t, i, j, k))) return std::array<std::size_t, 3>{i, j, k};
      }
    }
  }
  return std::nullopt;
}

bool is_leibniz(const StructTensor& t) { return !first_leibniz_failure(t).has_value(); }

bool is_lie(const StructTensor& t) {
  const std::size_t n = t.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!(t(i, j, k) + t(j, i, k)).is_zero()) return false;
      }
    }
  }
  return is_leibniz(t);
}

namespace {

template <class Next>
std::vector<Subspace> run_series(Subspace term, Next next) {
  std::vector<Subspace> out;
  out.push_back(term);
  while (!out.back().is_zero()) {
    Subspace following = next(out.back());
    const bool repeated = following == out.back();
    out.push_back(std::move(following));
    if (repeated) break;
  }
  return out;
}

}  // namespace

std::vector<Subspace> derived_series(const StructTensor& t) {
  const Subspace all = Subspace::whole(t.dim());
  return run_series(bracket_span(t, all, all), [&](const Subspace& s) { return bracket_span(t, s, s); });
}

std::vector<Subspace> lower_central_series(const StructTensor& t) {
  const Subspace all = Subspace::whole(t.dim());
  return run_series(bracket_span(t, all, all), [&](const Subspace& s) { return bracket_span(t, all, s); });
}

std::vector<std::size_t> dims(const std::vector<Subspace>& series) {
  std::vector<std::size_t> out;
  for (const auto& s : series) out.push_back(s.dim());
  return out;
}

bool is_solvable(const StructTensor& t) { return derived_series(t).back().is_zero(); }
bool is_nilpotent(const StructTensor& t) { return lower_central_series(t).back().is_zero(); }

Subspace left_annihilator(const StructTensor& t) {
  // x with sum_i x_i c(i, j, k) = 0 for all j, k
  const std::size_t n = t.dim();
  ScalarMatrix system(n * n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) system(j * n + k, i) = t(i, j, k);
    }
  }
  return Subspace::span(n, nullspace(system));
}

Subspace center(const StructTensor& t) {
  const std::size_t n = t.dim();
  ScalarMatrix system(2 * n * n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        system(j * n + k, i) = t(i, j, k);
        system(n * n + j * n + k, i) = t(j, i, k);
      }
    }
  }
  return Subspace::span(n, nullspace(system));
}

ScalarMatrix left_multiplication(const StructTensor& t, const Vec<Scalar>& x) {
  const std::size_t n = t.dim();
  if (x.size() != n) throw ShapeError("element length does not match dimension");
  ScalarMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec<Scalar> col = bracket(t, x, basis_vector<Scalar>(n, j));
    for (std::size_t k = 0; k < n; ++k) m(k, j) = col[k];
  }
  return m;
}

ScalarMatrix right_multiplication(const StructTensor& t, const Vec<Scalar>& x) {
  const std::size_t n = t.dim();
  if (x.size() != n) throw ShapeError("element length does not match dimension");
  ScalarMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vec<Scalar> col = bracket(t, basis_vector<Scalar>(n, j), x);
    for (std::size_t k = 0; k < n; ++k) m(k, j) = col[k];
  }
  return m;
}

bool element_nilpotent(const StructTensor& t, const Vec<Scalar>& x) {
  return matrix_nilpotent(left_multiplication(t, x)) && matrix_nilpotent(right_multiplication(t, x));
}

StructTensor change_basis(const StructTensor& t, const ScalarMatrix& p) {
  if (p.rows() != t.dim() || p.cols() != t.dim()) throw ShapeError("change of basis matrix has the wrong shape");
  return change_basis_with_inverse(t, p, inverse(p));
}

ScalarMatrix coordinate_map(const ScalarMatrix& p) { return inverse(p).transpose(); }

ClosureChecks subspace_closure_checks(const StructTensor& t, const Subspace& w) {
  if (w.ambient_dim() != t.dim()) throw ShapeError("subspace ambient dimension does not match algebra");
  const Subspace all = Subspace::whole(t.dim());
  ClosureChecks out;
  out.is_subalgebra = w.contains(bracket_span(t, w, w));
  out.is_left_ideal = w.contains(bracket_span(t, all, w));
  out.is_two_sided_ideal = out.is_left_ideal && w.contains(bracket_span(t, w, all));
  return out;
}

Fingerprint fingerprint(const StructTensor& t) {
  Fingerprint fp;
  fp.dim = t.dim();
  fp.derived_dims = dims(derived_series(t));
  fp.lower_central_dims = dims(lower_central_series(t));
  fp.ann_left_dim = left_annihilator(t).dim();
  fp.center_dim = center(t).dim();
  fp.is_lie = is_lie(t);
  fp.is_solvable = fp.derived_dims.back() == 0;
  fp.is_nilpotent = fp.lower_central_dims.back() == 0;
  return fp;
}

namespace {

std::string join(const std::vector<std::size_t>& xs) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << "]";
  return os.str();
}

}  // namespace

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "dim=" << dim << " derived=" << join(derived_dims) << " lower_central=" << join(lower_central_dims)
     << " ann_left=" << ann_left_dim << " center=" << center_dim << " lie=" << (is_lie ? "yes" : "no")
     << " solvable=" << (is_solvable ? "yes" : "no") << " nilpotent=" << (is_nilpotent ? "yes" : "no");
  return os.str();
}

std::vector<std::string> fingerprint_differences(const Fingerprint& x, const Fingerprint& y) {
  std::vector<std::string> out;
  if (x.dim != y.dim) out.push_back("dim");
  if (x.derived_dims != y.derived_dims) out.push_back("derived_dims");
  if (x.lower_central_dims != y.lower_central_dims) out.push_back("lower_central_dims");
  if (x.ann_left_dim != y.ann_left_dim) out.push_back("ann_left_dim");
  if (x.center_dim != y.center_dim) out.push_back("center_dim");
  if (x.is_lie != y.is_lie) out.push_back("is_lie");
  if (x.is_solvable != y.is_solvable) out.push_back("is_solvable");
  if (x.is_nilpotent != y.is_nilpotent) out.push_back("is_nilpotent");
  return out;
}

}  // namespace heisenleib
