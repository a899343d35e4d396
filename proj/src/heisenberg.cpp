#include "heisenleib/heisenberg.hpp"

namespace heisenleib {

ExtensionSpec ExtensionSpec::zeros(int n, int f) {
  ExtensionSpec s;
  s.n = n;
  s.f = f;
  s.a.assign(static_cast<std::size_t>(f), Scalar());
  s.X.assign(static_cast<std::size_t>(f), ScalarMatrix(2 * n, 2 * n));
  s.rho.assign(static_cast<std::size_t>(f), Vec<Scalar>(static_cast<std::size_t>(2 * n)));
  s.r = ScalarMatrix(f, f);
  return s;
}

std::vector<std::string> extension_labels(int n, int f) {
  std::vector<std::string> labels;
  for (int a = 0; a < f; ++a) labels.push_back(f == 1 ? "S" : "S" + std::to_string(a + 1));
  labels.push_back("H");
  for (int i = 0; i < n; ++i) labels.push_back(n == 1 ? "P" : "P" + std::to_string(i + 1));
  for (int i = 0; i < n; ++i) labels.push_back(n == 1 ? "B" : "B" + std::to_string(i + 1));
  return labels;
}

std::vector<std::size_t> ExtensionLayout::nilradical() const {
  std::vector<std::size_t> out{h()};
  for (int i = 0; i < n; ++i) out.push_back(p(i));
  for (int i = 0; i < n; ++i) out.push_back(b(i));
  return out;
}

StructTensor heisenberg(int n) {
  if (n < 1) throw DomainError("Heisenberg algebra needs n >= 1");
  std::vector<std::string> labels = extension_labels(n, 0);
  StructTensor t(static_cast<std::size_t>(2 * n + 1), labels);
  const ExtensionLayout layout{n, 0};
  for (int i = 0; i < n; ++i) {
    t(layout.p(i), layout.b(i), layout.h()) = Scalar(1);
    t(layout.b(i), layout.p(i), layout.h()) = Scalar(-1);
  }
  return t;
}

ScalarMatrix symplectic_form(int n) {
  ScalarMatrix k(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    k(i, n + i) = Scalar(1);
    k(n + i, i) = Scalar(-1);
  }
  return k;
}

bool symplectic_check(const ScalarMatrix& x, int n) {
  const auto size = static_cast<std::size_t>(2 * n);
  if (n < 1 || x.rows() != size || x.cols() != size) throw ShapeError("symplectic check needs a 2n x 2n matrix");
  const ScalarMatrix k = symplectic_form(n);
  return (x * k + k * x.transpose()).is_zero();
}

bool eigenvector_check(const ScalarMatrix& x, const Vec<Scalar>& rho, const Scalar& a) {
  const Vec<Scalar> image = apply(x, rho);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(image[i] - a * rho[i]).is_zero()) return false;
  }
  return true;
}

int max_extension_bound(int n) {
  if (n < 1) throw DomainError("n must be positive");
  return n + 1;
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Shape:
      return "shape-violation";
    case ViolationKind::FBound:
      return "f-bound-violation";
    case ViolationKind::ANormalization:
      return "a-normalization-violation";
    case ViolationKind::Symplectic:
      return "symplectic-violation";
    case ViolationKind::Commutation:
      return "commutation-violation";
    case ViolationKind::Nullspace:
      return "nullspace-violation";
    case ViolationKind::Nilindependence:
      break;
  }
  return "nilindependence-violation";
}

namespace {

bool has_negative_radicand(const Scalar& x) { return x.radicand() < 0; }

template <class F>
bool any_scalar(const ExtensionSpec& spec, F pred) {
  for (const auto& a : spec.a) {
    if (pred(a)) return true;
  }
  for (const auto& x : spec.X) {
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        if (pred(x(i, j))) return true;
      }
    }
  }
  for (const auto& v : spec.rho) {
    for (const auto& s : v) {
      if (pred(s)) return true;
    }
  }
  for (std::size_t i = 0; i < spec.r.rows(); ++i) {
    for (std::size_t j = 0; j < spec.r.cols(); ++j) {
      if (pred(spec.r(i, j))) return true;
    }
  }
  return false;
}

void check_shapes(const ExtensionSpec& spec) {
  if (spec.n < 1 || spec.f < 1) throw ValidationError(ViolationKind::Shape, "n and f must be positive");
  const auto f = static_cast<std::size_t>(spec.f);
  const auto size = static_cast<std::size_t>(2 * spec.n);
  if (spec.a.size() != f || spec.X.size() != f || spec.rho.size() != f) {
    throw ValidationError(ViolationKind::Shape, "a, X and rho need f entries each");
  }
  for (const auto& x : spec.X) {
    if (x.rows() != size || x.cols() != size) throw ValidationError(ViolationKind::Shape, "X must be 2n x 2n");
  }
  for (const auto& v : spec.rho) {
    if (v.size() != size) throw ValidationError(ViolationKind::Shape, "rho must have length 2n");
  }
  if (spec.r.rows() != f || spec.r.cols() != f) throw ValidationError(ViolationKind::Shape, "r must be f x f");
}

std::string alpha_label(std::size_t a) { return "X" + std::to_string(a + 1); }

}  // namespace

Field spec_field(const ExtensionSpec& spec) {
  return any_scalar(spec, has_negative_radicand) ? Field::Complex : Field::Real;
}

SpecCheck validate_extension(const ExtensionSpec& spec) {
  check_shapes(spec);
  const auto f = static_cast<std::size_t>(spec.f);
  if (spec.f > max_extension_bound(spec.n)) {
    throw ValidationError(ViolationKind::FBound, "f = " + std::to_string(spec.f) + " exceeds n + 1");
  }
  const bool a1_one = spec.a[0] == Scalar(1);
  if (!a1_one && !spec.a[0].is_zero()) throw ValidationError(ViolationKind::ANormalization, "a1 must be 0 or 1");
  for (std::size_t a = 1; a < f; ++a) {
    if (!spec.a[a].is_zero()) {
      throw ValidationError(ViolationKind::ANormalization, "a" + std::to_string(a + 1) + " must be 0");
    }
  }
  for (std::size_t a = 0; a < f; ++a) {
    if (!symplectic_check(spec.X[a], spec.n)) {
      throw ValidationError(ViolationKind::Symplectic, alpha_label(a) + " is not in sp(2n)");
    }
  }
  for (std::size_t a = 0; a < f; ++a) {
    for (std::size_t b = a + 1; b < f; ++b) {
      if (!(spec.X[a] * spec.X[b] == spec.X[b] * spec.X[a])) {
        throw ValidationError(ViolationKind::Commutation, alpha_label(a) + " and " + alpha_label(b) + " do not commute");
      }
    }
  }
  if (a1_one) {
    for (std::size_t a = 0; a < f; ++a) {
      if (!is_zero_vector(spec.rho[a])) {
        throw ValidationError(ViolationKind::Nullspace, "rho" + std::to_string(a + 1) + " must vanish when a1 = 1");
      }
    }
    if (!spec.r.is_zero()) throw ValidationError(ViolationKind::Nullspace, "r must vanish when a1 = 1");
  } else {
    // every X_a must kill every rho^b, not only its own
    for (std::size_t a = 0; a < f; ++a) {
      for (std::size_t b = 0; b < f; ++b) {
        if (!is_zero_vector(apply(spec.X[a], spec.rho[b]))) {
          throw ValidationError(ViolationKind::Nullspace,
                                "rho" + std::to_string(b + 1) + " is not in the nullspace of " + alpha_label(a));
        }
      }
    }
  }

  SpecCheck check;
  std::vector<ScalarMatrix> family(spec.X.begin() + (a1_one ? 1 : 0), spec.X.end());
  const Field field = spec_field(spec);
  check.nilindependence = nilindependence(family, field);
  if (check.nilindependence.nilindependent == Decision::No) {
    std::string what = "a nonzero combination of the X matrices is nilpotent";
    if (check.nilindependence.witness) {
      what += " (coefficients " + heisenleib::to_string(*check.nilindependence.witness) + ")";
    }
    throw ValidationError(ViolationKind::Nilindependence, what);
  }
  if (check.nilindependence.nilindependent == Decision::Undecided) {
    check.warnings.push_back("nilindependence undecided at this size (" + check.nilindependence.method + ")");
  }
  return check;
}

StructTensor build_extension_unchecked(const ExtensionSpec& spec) {
  check_shapes(spec);
  const ExtensionLayout layout{spec.n, spec.f};
  StructTensor t(layout.dim(), extension_labels(spec.n, spec.f));
  const int n = spec.n;
  for (int i = 0; i < n; ++i) {
    t(layout.p(i), layout.b(i), layout.h()) = Scalar(1);
    t(layout.b(i), layout.p(i), layout.h()) = Scalar(-1);
  }
  auto y = [&](int i) { return i < n ? layout.p(i) : layout.b(i - n); };
  for (int al = 0; al < spec.f; ++al) {
    const auto ua = static_cast<std::size_t>(al);
    const Scalar& a = spec.a[ua];
    const std::size_t s = layout.s(al);
    t(s, layout.h(), layout.h()) = Scalar(2) * a;
    t(layout.h(), s, layout.h()) = Scalar(-2) * a;
    for (int i = 0; i < 2 * n; ++i) {
      for (int j = 0; j < 2 * n; ++j) {
        Scalar m = spec.X[ua](static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        if (i == j) m += a;
        t(s, y(i), y(j)) = m;
        t(y(i), s, y(j)) = -m;
      }
      t(y(i), s, layout.h()) = spec.rho[ua][static_cast<std::size_t>(i)];
    }
    for (int be = 0; be < spec.f; ++be) {
      t(s, layout.s(be), layout.h()) = spec.r(ua, static_cast<std::size_t>(be));
    }
  }
  return t;
}

StructTensor build_extension(const ExtensionSpec& spec) {
  validate_extension(spec);
  return build_extension_unchecked(spec);
}

ScalarMatrix left_action_block(const StructTensor& t, const ExtensionLayout& layout, int alpha) {
  const auto idx = layout.nilradical();
  return left_action_rows(t, layout.s(alpha), idx, idx);
}

ScalarMatrix right_action_block(const StructTensor& t, const ExtensionLayout& layout, int alpha) {
  const auto idx = layout.nilradical();
  return right_action_rows(t, layout.s(alpha), idx, idx);
}

ScalarMatrix expected_left_block(const ExtensionSpec& spec, int alpha) {
  const auto ua = static_cast<std::size_t>(alpha);
  const std::size_t m = static_cast<std::size_t>(2 * spec.n);
  ScalarMatrix out(m + 1, m + 1);
  out(0, 0) = Scalar(2) * spec.a[ua];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) out(i + 1, j + 1) = spec.X[ua](i, j);
    out(i + 1, i + 1) += spec.a[ua];
  }
  return out;
}

ScalarMatrix expected_right_block(const ExtensionSpec& spec, int alpha) {
  const auto ua = static_cast<std::size_t>(alpha);
  const std::size_t m = static_cast<std::size_t>(2 * spec.n);
  ScalarMatrix out = -expected_left_block(spec, alpha);
  for (std::size_t i = 0; i < m; ++i) out(i + 1, 0) = spec.rho[ua][i];
  return out;
}

Subspace heisenberg_subspace(const ExtensionLayout& layout) {
  return Subspace::coordinate(layout.dim(), layout.nilradical());
}

}  // namespace heisenleib
