#include "heisenleib/nilpotency.hpp"

#include <stdexcept>

namespace heisenleib {

bool matrix_nilpotent(const ScalarMatrix& m) {
  if (!m.is_square()) throw ShapeError("nilpotency test needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return true;
  // M^(2^k) with 2^k >= n vanishes iff M is nilpotent
  ScalarMatrix p = m;
  for (std::size_t reach = 1; reach < n; reach *= 2) {
    if (p.is_zero()) return true;
    p = p * p;
  }
  return p.is_zero();
}

BinaryQuadraticRoots binary_quadratic_roots(const Rational& alpha, const Rational& beta, const Rational& gamma,
                                            Field field) {
  BinaryQuadraticRoots out;
  if (sgn(alpha) == 0 && sgn(beta) == 0 && sgn(gamma) == 0) {
    out.every_direction = true;
    return out;
  }
  if (sgn(alpha) == 0) {
    // c2 * (beta*c1 + gamma*c2) = 0
    out.lines.emplace_back(Scalar(1), Scalar(0));
    if (sgn(beta) != 0) out.lines.emplace_back(Scalar(Rational(-gamma)), Scalar(beta));
    return out;
  }
  // c2 != 0; dehomogenize at c2 = 1
  const Rational disc = beta * beta - 4 * alpha * gamma;
  if (field == Field::Real && sgn(disc) < 0) return out;
  const Rational denom = 2 * alpha;
  if (sgn(disc) == 0) {
    out.lines.emplace_back(Scalar(Rational(-beta / denom)), Scalar(1));
    return out;
  }
  Scalar root;
  if (!field_sqrt(Scalar(disc), root)) {
    out.complete = false;
    return out;
  }
  const Scalar inv = Scalar(Rational(1 / denom));
  out.lines.emplace_back((Scalar(Rational(-beta)) + root) * inv, Scalar(1));
  out.lines.emplace_back((Scalar(Rational(-beta)) - root) * inv, Scalar(1));
  return out;
}

namespace {

bool all_rational(const ScalarMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_rational()) return false;
    }
  }
  return true;
}

void require_sp2(const ScalarMatrix& x) {
  if (x.rows() != 2 || x.cols() != 2) throw DomainError("expected a 2x2 matrix");
  // sp(2) is exactly the traceless 2x2 matrices
  if (!(x(0, 0) + x(1, 1)).is_zero()) throw DomainError("matrix is not in sp(2): " + to_string(x));
}

ScalarMatrix combination(const std::vector<ScalarMatrix>& xs, const std::vector<Scalar>& c) {
  ScalarMatrix out(xs.front().rows(), xs.front().cols());
  for (std::size_t a = 0; a < xs.size(); ++a) {
    if (!c[a].is_zero()) out += xs[a].scaled(c[a]);
  }
  return out;
}

Scalar det2(const ScalarMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

Sp2Locus sp2_nilpotency_locus(const ScalarMatrix& x1, const ScalarMatrix& x2) {
  require_sp2(x1);
  require_sp2(x2);
  if (!all_rational(x1) || !all_rational(x2)) throw DomainError("nilpotency locus needs rational entries");
  Sp2Locus out;
  out.alpha = det2(x1).rational_part();
  out.gamma = det2(x2).rational_part();
  out.beta = det2(x1 + x2).rational_part() - out.alpha - out.gamma;

  // A traceless 2x2 matrix is nilpotent iff its determinant vanishes, and a
  // binary quadratic form always has a nonzero zero over C.
  out.nilindependent_over_C = false;
  bool real_root = sgn(out.alpha) == 0;
  if (!real_root) {
    const VarListPtr vars = make_varlist({"c1"});
    const PolyQ c = PolyQ::variable(vars, "c1");
    real_root = quadratic_real_root_exists(out.alpha * (c * c) + out.beta * c + PolyQ(out.gamma));
  }
  out.nilindependent_over_R = !real_root;

  for (Field field : {Field::Real, Field::Complex}) {
    const BinaryQuadraticRoots roots = binary_quadratic_roots(out.alpha, out.beta, out.gamma, field);
    std::optional<std::pair<Scalar, Scalar>> candidate;
    if (roots.every_direction) {
      candidate.emplace(Scalar(1), Scalar(0));
    } else if (!roots.lines.empty()) {
      candidate = roots.lines.front();
    }
    if (!candidate) continue;
    if (!matrix_nilpotent(combination({x1, x2}, {candidate->first, candidate->second}))) {
      throw std::logic_error("nilpotency witness failed verification");
    }
    out.witness = candidate;
    break;
  }
  return out;
}

Proportionality commuting_sp2_proportionality(const ScalarMatrix& x1, const ScalarMatrix& x2) {
  if (x1.rows() != 2 || x1.cols() != 2 || x2.rows() != 2 || x2.cols() != 2) {
    throw ShapeError("expected 2x2 matrices");
  }
  if (x1.is_zero() || x2.is_zero()) throw DomainError("proportionality test needs nonzero matrices");
  Proportionality out;
  out.commute = x1 * x2 == x2 * x1;
  const Scalar a1 = x1(0, 0), c1 = x1(0, 1), d1 = x1(1, 0);
  const Scalar a2 = x2(0, 0), c2 = x2(0, 1), d2 = x2(1, 0);
  out.proportional = (a1 * c2 - a2 * c1).is_zero() && (a1 * d2 - a2 * d1).is_zero() && (c1 * d2 - c2 * d1).is_zero();
  return out;
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Yes:
      return "yes";
    case Decision::No:
      return "no";
    case Decision::Undecided:
      break;
  }
  return "undecided";
}

NilindependenceResult nilindependence(const std::vector<ScalarMatrix>& xs, Field field) {
  NilindependenceResult out;
  if (xs.empty()) {
    out.nilindependent = Decision::Yes;
    out.method = "empty set";
    return out;
  }
  if (xs.size() == 1) {
    out.method = "single matrix";
    if (matrix_nilpotent(xs.front())) {
      out.nilindependent = Decision::No;
      out.witness = std::vector<Scalar>{Scalar(1)};
    } else {
      out.nilindependent = Decision::Yes;
    }
    return out;
  }
  const bool sp2_pair = xs.size() == 2 && xs[0].rows() == 2 && xs[0].cols() == 2 && xs[1].rows() == 2 &&
                        xs[1].cols() == 2 && (xs[0](0, 0) + xs[0](1, 1)).is_zero() &&
                        (xs[1](0, 0) + xs[1](1, 1)).is_zero();
  if (sp2_pair && all_rational(xs[0]) && all_rational(xs[1])) {
    out.method = "sp(2) determinant locus";
    const Sp2Locus locus = sp2_nilpotency_locus(xs[0], xs[1]);
    const bool independent = field == Field::Real ? locus.nilindependent_over_R : locus.nilindependent_over_C;
    out.nilindependent = independent ? Decision::Yes : Decision::No;
    if (!independent && locus.witness) out.witness = std::vector<Scalar>{locus.witness->first, locus.witness->second};
    return out;
  }
  if (sp2_pair && field == Field::Complex) {
    out.method = "binary quadratic form over C";
    out.nilindependent = Decision::No;
    return out;
  }
  // spot checks: single members, pairwise sums and differences
  out.method = "spot checks";
  const std::size_t f = xs.size();
  std::vector<std::vector<Scalar>> probes;
  for (std::size_t a = 0; a < f; ++a) {
    std::vector<Scalar> c(f);
    c[a] = Scalar(1);
    probes.push_back(c);
    for (std::size_t b = a + 1; b < f; ++b) {
      for (int sign : {1, -1}) {
        std::vector<Scalar> cc(f);
        cc[a] = Scalar(1);
        cc[b] = Scalar(sign);
        probes.push_back(cc);
      }
    }
  }
  for (const auto& c : probes) {
    if (matrix_nilpotent(combination(xs, c))) {
      out.nilindependent = Decision::No;
      out.witness = c;
      return out;
    }
  }
  out.nilindependent = Decision::Undecided;
  return out;
}

bool subspace_nilpotent(const StructTensor& t, const Subspace& w) {
  if (!subspace_closure_checks(t, w).is_subalgebra) throw NotSubalgebraError("subspace is not closed under the bracket");
  Subspace term = w;
  while (!term.is_zero()) {
    Subspace next = bracket_span(t, w, term);
    if (next == term) return false;
    term = std::move(next);
  }
  return true;
}

std::string to_string(Maximality m) {
  switch (m) {
    case Maximality::Proved:
      return "proved";
    case Maximality::Refuted:
      return "refuted";
    case Maximality::Undecided:
      break;
  }
  return "undecided";
}

namespace {

// Coordinates of w in the (independent) rows of `basis`; nullopt if w is outside the span.
std::optional<Vec<Scalar>> coordinates_in(const std::vector<Vec<Scalar>>& basis, const Vec<Scalar>& w) {
  const std::size_t m = basis.size();
  const std::size_t n = w.size();
  ScalarMatrix aug(n, m + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug(i, j) = basis[j][i];
    aug(i, m) = w[i];
  }
  const RowEchelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m) return std::nullopt;
  Vec<Scalar> out(m);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out[e.pivots[r]] = e.reduced(r, m);
  return out;
}

Vec<Scalar> combine(const std::vector<Vec<Scalar>>& vs, const std::vector<Scalar>& c) {
  Vec<Scalar> out(vs.front().size());
  for (std::size_t a = 0; a < vs.size(); ++a) {
    if (c[a].is_zero()) continue;
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (!vs[a][k].is_zero()) out[k] += c[a] * vs[a][k];
    }
  }
  return out;
}

// Refutes maximality if x is a nilpotent element whose enlargement is nilpotent.
bool try_refute(const StructTensor& t, const Subspace& n, const Vec<Scalar>& x, NilradicalCertificate& cert) {
  bool nil = false;
  try {
    nil = element_nilpotent(t, x);
  } catch (const IncompatibleFieldError&) {
    return false;
  }
  if (!nil) return false;
  const Subspace enlarged = n + Subspace::span(t.dim(), {x});
  if (!subspace_nilpotent(t, enlarged)) return false;
  cert.maximality = Maximality::Refuted;
  cert.witness = x;
  return true;
}

struct QuotientBlocks {
  Scalar lambda;     // action on [N,N]
  ScalarMatrix y;    // action on N/[N,N]
};

// Action of x on N in the basis (z, q1, q2), split into the [N,N] scalar and
// the 2x2 quotient block. nullopt when [N,N] is not invariant.
std::optional<QuotientBlocks> quotient_blocks(const StructTensor& t, const Vec<Scalar>& x,
                                              const std::vector<Vec<Scalar>>& nbasis, bool left) {
  auto act = [&](const Vec<Scalar>& v) { return left ? bracket(t, x, v) : bracket(t, v, x); };
  QuotientBlocks out{Scalar(), ScalarMatrix(2, 2)};
  for (std::size_t j = 0; j < 3; ++j) {
    const auto c = coordinates_in(nbasis, act(nbasis[j]));
    if (!c) return std::nullopt;
    if (j == 0) {
      if (!(*c)[1].is_zero() || !(*c)[2].is_zero()) return std::nullopt;
      out.lambda = (*c)[0];
    } else {
      out.y(0, j - 1) = (*c)[1];
      out.y(1, j - 1) = (*c)[2];
    }
  }
  return out;
}

void certify_two_dimensional_complement(const StructTensor& t, const Subspace& n, Field field,
                                        const std::vector<Vec<Scalar>>& comp, NilradicalCertificate& cert) {
  cert.method = "quotient-block locus";
  const Subspace nn = bracket_span(t, n, n);
  // basis of N adapted to [N,N] ⊂ N
  std::vector<Vec<Scalar>> nbasis = nn.basis();
  for (const auto& v : n.basis()) {
    std::vector<Vec<Scalar>> trial = nbasis;
    trial.push_back(v);
    if (Subspace::span(t.dim(), trial).dim() == trial.size()) nbasis.push_back(v);
  }
  std::vector<QuotientBlocks> left, right;
  for (const auto& s : comp) {
    auto l = quotient_blocks(t, s, nbasis, true);
    auto r = quotient_blocks(t, s, nbasis, false);
    if (!l || !r) {
      cert.method += " (derived ideal not invariant)";
      return;
    }
    left.push_back(*l);
    right.push_back(*r);
  }
  auto trace = [](const ScalarMatrix& m) { return m(0, 0) + m(1, 1); };
  // linear conditions: both scalar actions and both quotient traces vanish
  ScalarMatrix linear(4, 2);
  for (std::size_t a = 0; a < 2; ++a) {
    linear(0, a) = left[a].lambda;
    linear(1, a) = trace(left[a].y);
    linear(2, a) = right[a].lambda;
    linear(3, a) = trace(right[a].y);
  }
  const auto kernel = nullspace(linear);
  if (kernel.empty()) {
    cert.maximality = Maximality::Proved;
    return;
  }
  if (kernel.size() == 1) {
    const Vec<Scalar> x = combine(comp, kernel.front());
    if (!try_refute(t, n, x, cert)) cert.maximality = Maximality::Proved;
    return;
  }
  // both quotient determinants are binary quadratic forms in (c1, c2)
  auto form = [&](const std::vector<QuotientBlocks>& blocks) -> std::optional<std::array<Rational, 3>> {
    const Scalar al = det2(blocks[0].y);
    const Scalar ga = det2(blocks[1].y);
    const Scalar be = det2(blocks[0].y + blocks[1].y) - al - ga;
    if (!al.is_rational() || !be.is_rational() || !ga.is_rational()) return std::nullopt;
    return std::array<Rational, 3>{al.rational_part(), be.rational_part(), ga.rational_part()};
  };
  const auto ql = form(left);
  const auto qr = form(right);
  if (!ql || !qr) {
    cert.method += " (irrational form)";
    return;
  }
  auto eval = [](const std::array<Rational, 3>& q, const std::pair<Scalar, Scalar>& c) {
    return Scalar(q[0]) * c.first * c.first + Scalar(q[1]) * c.first * c.second + Scalar(q[2]) * c.second * c.second;
  };
  BinaryQuadraticRoots roots = binary_quadratic_roots((*ql)[0], (*ql)[1], (*ql)[2], field);
  const std::array<Rational, 3>* other = &*qr;
  if (roots.every_direction) {
    roots = binary_quadratic_roots((*qr)[0], (*qr)[1], (*qr)[2], field);
    other = nullptr;
  }
  if (roots.every_direction) roots.lines.emplace_back(Scalar(1), Scalar(0));
  for (const auto& line : roots.lines) {
    try {
      if (other && !eval(*other, line).is_zero()) continue;
    } catch (const IncompatibleFieldError&) {
      continue;
    }
    if (try_refute(t, n, combine(comp, {line.first, line.second}), cert)) return;
  }
  cert.maximality = roots.complete ? Maximality::Proved : Maximality::Undecided;
}

}  // namespace

NilradicalCertificate certify_nilradical(const StructTensor& t, const Subspace& n, Field field,
                                         std::string algebra_id) {
  NilradicalCertificate cert;
  cert.algebra_id = std::move(algebra_id);
  cert.nilradical = n;
  const ClosureChecks closure = subspace_closure_checks(t, n);
  cert.ideal = closure.is_two_sided_ideal;
  cert.nilpotent = closure.is_subalgebra && subspace_nilpotent(t, n);
  const Subspace all = Subspace::whole(t.dim());
  cert.contains_derived = n.contains(bracket_span(t, all, all));
  if (!(cert.ideal && cert.nilpotent && cert.contains_derived)) {
    cert.method = "preconditions failed";
    return cert;
  }

  std::vector<bool> pivot(t.dim(), false);
  for (auto p : n.pivots()) pivot[p] = true;
  std::vector<Vec<Scalar>> comp;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    if (!pivot[i]) comp.push_back(basis_vector<Scalar>(t.dim(), i));
  }

  if (comp.empty()) {
    cert.method = "N is the whole algebra";
    cert.maximality = Maximality::Proved;
    return cert;
  }
  if (comp.size() == 1) {
    cert.method = "complement element nilpotency";
    if (!try_refute(t, n, comp.front(), cert)) {
      cert.maximality = element_nilpotent(t, comp.front()) ? Maximality::Undecided : Maximality::Proved;
    }
    return cert;
  }
  if (comp.size() == 2 && n.dim() == 3 && bracket_span(t, n, n).dim() == 1) {
    certify_two_dimensional_complement(t, n, field, comp, cert);
    return cert;
  }
  cert.method = "spot checks";
  for (std::size_t a = 0; a < comp.size(); ++a) {
    if (try_refute(t, n, comp[a], cert)) return cert;
    for (std::size_t b = a + 1; b < comp.size(); ++b) {
      for (int sign : {1, -1}) {
        std::vector<Scalar> c(comp.size());
        c[a] = Scalar(1);
        c[b] = Scalar(sign);
        if (try_refute(t, n, combine(comp, c), cert)) return cert;
      }
    }
  }
  cert.maximality = Maximality::Undecided;
  return cert;
}

bool mubar_bound_check(std::size_t nilradical_dim, std::size_t algebra_dim) {
  return 2 * nilradical_dim >= algebra_dim;
}

bool mubar_bound_check(const StructTensor& t, const Subspace& n) { return mubar_bound_check(n.dim(), t.dim()); }

}  // namespace heisenleib
