#include "heisenleib/constraints.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace heisenleib {

namespace {

const char* const kVectorKinds[] = {"sigma1", "sigma2", "tau1", "tau2", "gamma1", "gamma2", "rho1", "rho2"};
const char* const kMatrixKinds[] = {"A", "C", "D", "E", "F", "G", "M", "N"};

enum class Kind { S, H, P, B };

Kind kind_of(const ExtensionLayout& l, std::size_t idx) {
  if (idx < l.h()) return Kind::S;
  if (idx == l.h()) return Kind::H;
  if (idx < l.b(0)) return Kind::P;
  return Kind::B;
}

PolyQ half(const PolyQ& p) { return Rational(1, 2) * p; }

}  // namespace

std::string to_string(const Binding& b) { return b.var + " := " + b.value.to_string(); }

std::string param_name(const std::string& kind, int alpha) { return kind + "_" + std::to_string(alpha); }
std::string param_name(const std::string& kind, int alpha, int i) {
  return param_name(kind, alpha) + "_" + std::to_string(i);
}
std::string param_name(const std::string& kind, int alpha, int i, int j) {
  return param_name(kind, alpha, i) + "_" + std::to_string(j);
}

bool ParamAlgebra::has_stage(const std::string& stage) const {
  return std::any_of(applied.begin(), applied.end(), [&](const AppliedConstraint& c) { return c.stage == stage; });
}

std::optional<Rational> ParamAlgebra::a1_normalized() const {
  for (const auto& c : applied) {
    if (c.stage != "a-normalization") continue;
    for (const auto& b : c.bindings) {
      if (b.var == "a_1") return b.value.constant_term();
    }
  }
  return std::nullopt;
}

std::vector<std::string> ParamAlgebra::free_variables() const {
  std::set<std::uint32_t> used;
  const std::size_t d = tensor.dim();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        for (auto v : tensor(i, j, k).used_variables()) used.insert(v);
      }
    }
  }
  std::vector<std::string> out;
  for (auto v : used) out.push_back(vars->name(v));
  return out;
}

PolyQ ConstraintReport::component(const std::string& label) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i] == label) return residual_polys[i];
  }
  return PolyQ();
}

ParamAlgebra parametric_extension(int n, int f) {
  if (n < 1) throw DomainError("n must be positive");
  if (f < 1 || f > n + 1) throw DomainError("f must satisfy 1 <= f <= n + 1");
  std::vector<std::string> names;
  for (const char* k : {"a", "b"}) {
    for (int al = 1; al <= f; ++al) names.push_back(param_name(k, al));
  }
  for (const char* k : kVectorKinds) {
    for (int al = 1; al <= f; ++al) {
      for (int i = 1; i <= n; ++i) names.push_back(param_name(k, al, i));
    }
  }
  for (const char* k : kMatrixKinds) {
    for (int al = 1; al <= f; ++al) {
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) names.push_back(param_name(k, al, i, j));
      }
    }
  }
  for (int al = 1; al <= f; ++al) {
    for (int be = 1; be <= f; ++be) names.push_back(param_name("r", al, be));
  }
  for (const char* k : {"mu", "nu"}) {
    for (int al = 1; al <= f; ++al) {
      for (int be = 1; be <= f; ++be) {
        for (int i = 1; i <= n; ++i) names.push_back(param_name(k, al, be, i));
      }
    }
  }

  ParamAlgebra pa;
  pa.n = n;
  pa.f = f;
  pa.vars = make_varlist(std::move(names));
  const ExtensionLayout l = pa.layout();
  pa.tensor = ParamTensor(l.dim(), extension_labels(n, f));
  ParamTensor& t = pa.tensor;
  auto v = [&](const std::string& name) { return PolyQ::variable(pa.vars, name); };

  for (int i = 0; i < n; ++i) {
    t(l.p(i), l.b(i), l.h()) = PolyQ(1);
    t(l.b(i), l.p(i), l.h()) = PolyQ(-1);
  }
  for (int al = 0; al < f; ++al) {
    const int A = al + 1;
    const std::size_t s = l.s(al);
    const PolyQ a = v(param_name("a", A));
    const PolyQ b = v(param_name("b", A));
    t(s, l.h(), l.h()) = Rational(2) * a;
    t(l.h(), s, l.h()) = Rational(2) * b;
    for (int j = 0; j < n; ++j) {
      t(s, l.h(), l.p(j)) = v(param_name("sigma1", A, j + 1));
      t(s, l.h(), l.b(j)) = v(param_name("sigma2", A, j + 1));
      t(l.h(), s, l.p(j)) = v(param_name("tau1", A, j + 1));
      t(l.h(), s, l.b(j)) = v(param_name("tau2", A, j + 1));
    }
    for (int i = 0; i < n; ++i) {
      t(s, l.p(i), l.h()) = v(param_name("gamma1", A, i + 1));
      t(s, l.b(i), l.h()) = v(param_name("gamma2", A, i + 1));
      t(l.p(i), s, l.h()) = v(param_name("rho1", A, i + 1));
      t(l.b(i), s, l.h()) = v(param_name("rho2", A, i + 1));
      for (int j = 0; j < n; ++j) {
        const PolyQ da = i == j ? a : PolyQ();
        const PolyQ db = i == j ? b : PolyQ();
        t(s, l.p(i), l.p(j)) = da + v(param_name("A", A, i + 1, j + 1));
        t(s, l.p(i), l.b(j)) = v(param_name("C", A, i + 1, j + 1));
        t(s, l.b(i), l.p(j)) = v(param_name("D", A, i + 1, j + 1));
        t(s, l.b(i), l.b(j)) = da + v(param_name("E", A, i + 1, j + 1));
        t(l.p(i), s, l.p(j)) = db + v(param_name("F", A, i + 1, j + 1));
        t(l.p(i), s, l.b(j)) = v(param_name("G", A, i + 1, j + 1));
        t(l.b(i), s, l.p(j)) = v(param_name("M", A, i + 1, j + 1));
        t(l.b(i), s, l.b(j)) = db + v(param_name("N", A, i + 1, j + 1));
      }
    }
    for (int be = 0; be < f; ++be) {
      const std::size_t sb = l.s(be);
      t(s, sb, l.h()) = v(param_name("r", A, be + 1));
      for (int i = 0; i < n; ++i) {
        t(s, sb, l.p(i)) = v(param_name("mu", A, be + 1, i + 1));
        t(s, sb, l.b(i)) = v(param_name("nu", A, be + 1, i + 1));
      }
    }
  }
  return pa;
}

ParamAlgebra apply_bindings(const ParamAlgebra& pa, const std::string& stage, const Bindings& bindings) {
  std::map<std::string, PolyQ> map;
  for (const auto& b : bindings) {
    if (!pa.vars->find(b.var)) throw UnknownIndeterminateError("undeclared indeterminate '" + b.var + "'");
    map[b.var] = b.value;
  }
  ParamAlgebra out = pa;
  if (!map.empty()) {
    out.tensor = pa.tensor.transformed([&](const PolyQ& p) { return p.is_constant() ? p : p.substitute(map); });
  }
  out.applied.push_back({stage, bindings});
  return out;
}

ParamAlgebra replay(int n, int f, const std::vector<AppliedConstraint>& applied) {
  ParamAlgebra pa = parametric_extension(n, f);
  for (const auto& c : applied) pa = apply_bindings(pa, c.stage, c.bindings);
  return pa;
}

namespace {

PolyMatrix identity_poly(std::size_t n) { return PolyMatrix::identity(n); }

// For P = I + N with N^2 = 0 the inverse is I - N.
PolyMatrix unipotent_inverse(const PolyMatrix& p) {
  const PolyMatrix id = identity_poly(p.rows());
  return id - (p - id);
}

}  // namespace

PolyMatrix gamma_change_of_basis(const ParamAlgebra& pa) {
  const ExtensionLayout l = pa.layout();
  PolyMatrix p = identity_poly(l.dim());
  for (int al = 0; al < pa.f; ++al) {
    const std::size_t s = l.s(al);
    for (int i = 0; i < pa.n; ++i) {
      p(s, l.b(i)) = pa.tensor(s, l.p(i), l.h());
      p(s, l.p(i)) = -pa.tensor(s, l.b(i), l.h());
    }
  }
  return p;
}

ParamTensor gamma_transformed_tensor(const ParamAlgebra& pa) {
  const PolyMatrix p = gamma_change_of_basis(pa);
  return change_basis_with_inverse(pa.tensor, p, unipotent_inverse(p));
}

ParamAlgebra gamma_eliminate(const ParamAlgebra& pa) {
  const ExtensionLayout l = pa.layout();
  const ParamTensor shifted = gamma_transformed_tensor(pa);
  for (int al = 0; al < pa.f; ++al) {
    for (int i = 0; i < pa.n; ++i) {
      if (!shifted(l.s(al), l.p(i), l.h()).is_zero() || !shifted(l.s(al), l.b(i), l.h()).is_zero()) {
        throw std::logic_error("gamma shift left an H-component in [S,P] or [S,B]");
      }
    }
  }
  // the Heisenberg products are untouched, so the shifted tensor is again a
  // member of the generic family, with gamma = 0
  for (std::size_t i = l.h(); i < l.dim(); ++i) {
    for (std::size_t j = l.h(); j < l.dim(); ++j) {
      for (std::size_t k = 0; k < l.dim(); ++k) {
        if (!(shifted(i, j, k) == pa.tensor(i, j, k))) throw std::logic_error("gamma shift changed H(n)");
      }
    }
  }
  Bindings bindings;
  const auto free = pa.free_variables();
  for (const char* k : {"gamma1", "gamma2"}) {
    for (int al = 1; al <= pa.f; ++al) {
      for (int i = 1; i <= pa.n; ++i) {
        const std::string name = param_name(k, al, i);
        if (std::find(free.begin(), free.end(), name) != free.end()) bindings.push_back({name, PolyQ()});
      }
    }
  }
  return apply_bindings(pa, "gamma", bindings);
}

namespace {

std::string triple_label(const ParamTensor& t, std::size_t i, std::size_t j, std::size_t k) {
  return "(" + t.label(i) + "," + t.label(j) + "," + t.label(k) + ")";
}

std::string jacobi_table_row(Kind x, Kind y, Kind z) {
  using K = Kind;
  if (x == K::S && y == K::P && z == K::H) return "{S_a,P_i,H} => sigma2 = 0";
  if (x == K::S && y == K::B && z == K::H) return "{S_a,B_i,H} => sigma1 = 0";
  if (x == K::P && y == K::H && z == K::S) return "{P_i,H,S_a} => tau2 = 0";
  if (x == K::B && y == K::H && z == K::S) return "{B_i,H,S_a} => tau1 = 0";
  if (x == K::S && y == K::P && z == K::P) return "{S_a,P_i,P_j} => C = C^T";
  if (x == K::S && y == K::B && z == K::B) return "{S_a,B_i,B_j} => D = D^T";
  if (x == K::S && y == K::B && z == K::P) return "{S_a,B_i,P_j} => E = -A^T";
  if (x == K::S && y == K::S && z == K::P) return "{S_a,S_b,P_i} => nu = 0";
  if (x == K::S && y == K::S && z == K::B) return "{S_a,S_b,B_i} => mu = 0";
  return {};
}

// [[x,y],z] + [y,[x,z]] - [x,[y,z]]
Vec<PolyQ> jacobi_defect(const ParamTensor& t, std::size_t i, std::size_t j, std::size_t k) {
  Vec<PolyQ> r = leibniz_residual(t, i, j, k);
  for (auto& x : r) x = -x;
  return r;
}

void fill_components(ConstraintReport& rep, const Vec<PolyQ>& v, const std::vector<std::string>& labels) {
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c].is_zero()) continue;
    rep.residual_polys.push_back(v[c]);
    rep.components.push_back(labels[c]);
  }
}

}  // namespace

std::vector<ConstraintReport> jacobi_residual_system(const ParamAlgebra& pa) {
  const ExtensionLayout l = pa.layout();
  const ParamTensor& t = pa.tensor;
  std::vector<ConstraintReport> out;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    for (std::size_t j = 0; j < t.dim(); ++j) {
      for (std::size_t k = 0; k < t.dim(); ++k) {
        const Vec<PolyQ> r = jacobi_defect(t, i, j, k);
        if (is_zero_vector(r)) continue;
        ConstraintReport rep;
        rep.stage = "jacobi";
        rep.source = triple_label(t, i, j, k);
        rep.table_row = jacobi_table_row(kind_of(l, i), kind_of(l, j), kind_of(l, k));
        fill_components(rep, r, t.labels());
        out.push_back(std::move(rep));
      }
    }
  }
  return out;
}

std::vector<ConstraintReport> table_reports(const std::vector<ConstraintReport>& reports) {
  std::vector<ConstraintReport> out;
  std::copy_if(reports.begin(), reports.end(), std::back_inserter(out),
               [](const ConstraintReport& r) { return !r.table_row.empty(); });
  return out;
}

std::vector<ConstraintReport> annihilator_residual_system(const ParamAlgebra& pa) {
  if (!pa.has_stage("jacobi")) throw OrderingError("annihilator stage needs the Jacobi stage first");
  const ExtensionLayout l = pa.layout();
  const ParamTensor& t = pa.tensor;
  std::vector<std::size_t> zs = l.nilradical();
  const auto a1 = pa.a1_normalized();
  const bool with_s1 = a1 && *a1 == 1;
  if (with_s1) zs.push_back(l.s(0));

  std::vector<ConstraintReport> out;
  for (int al = 0; al < pa.f; ++al) {
    const std::size_t s = l.s(al);
    for (std::size_t y = 0; y < t.dim(); ++y) {
      Vec<PolyQ> sym = t.product(s, y);
      const Vec<PolyQ> back = t.product(y, s);
      for (std::size_t c = 0; c < sym.size(); ++c) sym[c] += back[c];
      if (is_zero_vector(sym)) continue;
      for (std::size_t z : zs) {
        const Vec<PolyQ> r = bracket_right_basis(t, sym, z);
        if (is_zero_vector(r)) continue;
        ConstraintReport rep;
        rep.stage = "annihilator";
        rep.source = "[[" + t.label(s) + "," + t.label(y) + "]+[" + t.label(y) + "," + t.label(s) + "]," +
                     t.label(z) + "]";
        const Kind ky = kind_of(l, y);
        const Kind kz = kind_of(l, z);
        if (kz == Kind::S) {
          if (ky == Kind::P) rep.table_row = "[[S_a,P_i]+[P_i,S_a],S_1] => rho1 = 0";
          if (ky == Kind::B) rep.table_row = "[[S_a,B_i]+[B_i,S_a],S_1] => rho2 = 0";
          if (ky == Kind::S) rep.table_row = "[[S_a,S_b]+[S_b,S_a],S_1] => r_ab = -r_ba";
        } else if (ky == Kind::P && kz == Kind::P) {
          rep.table_row = "[[S_a,P_i]+[P_i,S_a],P_j] => G = -C";
        } else if (ky == Kind::B && kz == Kind::B) {
          rep.table_row = "[[S_a,B_i]+[B_i,S_a],B_j] => M = -D";
        } else if ((ky == Kind::P && kz == Kind::B) || (ky == Kind::B && kz == Kind::P)) {
          rep.table_row = "[[S_a,P_i]+[P_i,S_a],B_j], [[S_a,B_i]+[B_i,S_a],P_j] => b = -a, F = -A";
        }
        fill_components(rep, r, t.labels());
        out.push_back(std::move(rep));
      }
    }
    // right-action companions tie F to N and pin b
    for (int i = 0; i < pa.n; ++i) {
      for (int j = 0; j < pa.n; ++j) {
        const Vec<PolyQ> r = jacobi_defect(t, l.p(i), l.b(j), s);
        if (is_zero_vector(r)) continue;
        ConstraintReport rep;
        rep.stage = "annihilator";
        rep.source = triple_label(t, l.p(i), l.b(j), s);
        rep.table_row = "{P_i,B_j,S_a} => N^T = -F";
        fill_components(rep, r, t.labels());
        out.push_back(std::move(rep));
      }
    }
  }
  return out;
}

namespace {

struct SBlocks {
  std::vector<PolyMatrix> left;
  std::vector<PolyMatrix> right;
};

SBlocks s_blocks(const ParamAlgebra& pa) {
  const ExtensionLayout l = pa.layout();
  const auto idx = l.nilradical();
  SBlocks out;
  for (int al = 0; al < pa.f; ++al) {
    out.left.push_back(left_action_rows(pa.tensor, l.s(al), idx, idx));
    out.right.push_back(right_action_rows(pa.tensor, l.s(al), idx, idx));
  }
  return out;
}

void fill_matrix_components(ConstraintReport& rep, const PolyMatrix& m, const std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero()) continue;
      rep.residual_polys.push_back(m(i, j));
      rep.components.push_back("(" + labels[i] + "," + labels[j] + ")");
    }
  }
}

std::string s_label(int f, int al) { return f == 1 ? "S" : "S" + std::to_string(al + 1); }

}  // namespace

std::vector<ConstraintReport> commutation_residual_system(const ParamAlgebra& pa) {
  if (!pa.has_stage("annihilator")) throw OrderingError("commutation stage needs the annihilator stage first");
  const ExtensionLayout l = pa.layout();
  std::vector<std::string> labels;
  for (auto i : l.nilradical()) labels.push_back(pa.tensor.label(i));
  const SBlocks blocks = s_blocks(pa);
  std::vector<ConstraintReport> out;
  for (int al = 0; al < pa.f; ++al) {
    for (int be = al + 1; be < pa.f; ++be) {
      const auto ua = static_cast<std::size_t>(al);
      const auto ub = static_cast<std::size_t>(be);
      const PolyMatrix m = blocks.left[ua] * blocks.left[ub] - blocks.left[ub] * blocks.left[ua];
      if (m.is_zero()) continue;
      ConstraintReport rep;
      rep.stage = "commutation";
      rep.source = "L_" + s_label(pa.f, al) + " L_" + s_label(pa.f, be) + " - L_" + s_label(pa.f, be) + " L_" +
                   s_label(pa.f, al);
      rep.table_row = "X_a X_b = X_b X_a";
      fill_matrix_components(rep, m, labels);
      out.push_back(std::move(rep));
    }
  }
  for (int al = 0; al < pa.f; ++al) {
    for (int be = 0; be < pa.f; ++be) {
      const auto ua = static_cast<std::size_t>(al);
      const auto ub = static_cast<std::size_t>(be);
      const PolyMatrix m = blocks.left[ua] * blocks.right[ub] - blocks.right[ub] * blocks.left[ua];
      if (m.is_zero()) continue;
      ConstraintReport rep;
      rep.stage = "commutation";
      rep.source = "L_" + s_label(pa.f, al) + " R_" + s_label(pa.f, be) + " - R_" + s_label(pa.f, be) + " L_" +
                   s_label(pa.f, al);
      rep.table_row = al == be ? "X rho = a rho" : "X_a rho^b = a_a rho^b";
      fill_matrix_components(rep, m, labels);
      out.push_back(std::move(rep));
    }
  }
  return out;
}

ArarReport verify_arar(const ParamAlgebra& pa) {
  if (pa.f < 2) throw DomainError("the S-triple identity needs f >= 2");
  if (!pa.has_stage("commutation")) throw OrderingError("S-triple identity needs the commutation stage first");
  const ExtensionLayout l = pa.layout();
  const ParamTensor& t = pa.tensor;
  ArarReport out;
  for (int al = 0; al < pa.f; ++al) {
    for (int be = 0; be < pa.f; ++be) {
      const Vec<PolyQ> r = jacobi_defect(t, l.s(0), l.s(al), l.s(be));
      const PolyQ& hcoef = r[l.h()];
      const int A = al + 1, B = be + 1;
      auto v = [&](const std::string& name) { return pa.var(name); };
      PolyQ expected = v("a_1") * v(param_name("r", A, B)) - v(param_name("a", A)) * v(param_name("r", 1, B)) +
                       v(param_name("a", B)) * v(param_name("r", 1, A));
      expected *= Rational(-2);
      for (const auto& c : pa.applied) {
        std::map<std::string, PolyQ> map;
        for (const auto& b : c.bindings) map[b.var] = b.value;
        if (!map.empty()) expected = expected.substitute(map);
      }
      if (!(expected == hcoef)) out.identity_holds = false;
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (c != l.h() && !r[c].is_zero()) out.identity_holds = false;
      }
      ConstraintReport rep;
      rep.stage = "arar";
      rep.source = triple_label(t, l.s(0), l.s(al), l.s(be));
      if (al == 0 && be == 0) {
        rep.table_row = "a_1 r_11 = 0 => r_11 = 0";
      } else if (al != 0 && be == 0) {
        rep.table_row = "a_1 r_a1 = a_a r_11 - a_1 r_1a";
      } else if (al == 0) {
        rep.table_row = "a_1 r_1b = a_1 r_1b - a_b r_11";
      } else {
        rep.table_row = "a_1 r_ab = a_a r_1b - a_b r_1a => r_ab = 0";
      }
      if (!hcoef.is_zero()) {
        rep.residual_polys.push_back(hcoef);
        rep.components.push_back("H");
      }
      out.pairs.push_back(std::move(rep));
    }
  }
  return out;
}

Bindings extract_forced_bindings(std::vector<ConstraintReport>& reports) {
  VarListPtr vars;
  std::vector<PolyQ> pool;
  for (const auto& rep : reports) {
    for (const auto& p : rep.residual_polys) {
      if (!vars && p.vars()) vars = p.vars();
      pool.push_back(p);
    }
  }
  Bindings all;
  if (!vars) return all;

  while (true) {
    std::vector<PolyQ> linear;
    std::vector<PolyQ> rest;
    for (auto& p : pool) {
      if (p.is_zero()) continue;
      (p.degree() <= 1 ? linear : rest).push_back(p);
    }
    if (linear.empty()) break;

    // columns: used indeterminates, latest declared first, then the constant
    std::set<std::uint32_t> used_set;
    for (const auto& p : linear) {
      for (auto v : p.used_variables()) used_set.insert(v);
    }
    const std::vector<std::uint32_t> used(used_set.rbegin(), used_set.rend());
    std::map<std::uint32_t, std::size_t> column;
    for (std::size_t c = 0; c < used.size(); ++c) column[used[c]] = c;
    const std::size_t const_col = used.size();
    ScalarMatrix m(linear.size(), used.size() + 1);
    for (std::size_t r = 0; r < linear.size(); ++r) {
      for (const auto& [mono, coeff] : linear[r].terms()) {
        const std::size_t c = mono.degree == 0 ? const_col : column.at(mono.factors.front().first);
        m(r, c) = Scalar(coeff);
      }
    }
    const RowEchelon e = rref(m);
    Bindings fresh;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      const std::size_t p = e.pivots[r];
      if (p == const_col) throw InconsistencyError("linear residuals force 0 = 1");
      PolyQ value(Rational(-e.reduced(r, const_col).rational_part()));
      for (std::size_t c = p + 1; c < const_col; ++c) {
        const Scalar& coeff = e.reduced(r, c);
        if (!coeff.is_zero()) value -= coeff.rational_part() * PolyQ::variable(vars, used[c]);
      }
      fresh.push_back({vars->name(used[p]), value});
    }
    std::map<std::string, PolyQ> map;
    for (const auto& b : fresh) map[b.var] = b.value;
    for (auto& b : all) b.value = b.value.substitute(map);
    all.insert(all.end(), fresh.begin(), fresh.end());
    pool.clear();
    for (const auto& p : rest) pool.push_back(p.substitute(map));
  }

  std::map<std::string, PolyQ> full;
  for (const auto& b : all) full[b.var] = b.value;
  for (auto& rep : reports) {
    std::set<std::string> mentioned;
    for (const auto& p : rep.residual_polys) {
      for (const auto& name : p.used_names()) mentioned.insert(name);
      if (p.degree() <= 1 && !p.substitute(full).is_zero()) {
        throw std::logic_error("binding failed to annihilate its linear residual");
      }
    }
    rep.forced.clear();
    for (const auto& b : all) {
      if (mentioned.count(b.var)) rep.forced.push_back(b);
    }
  }
  return all;
}

ParamAlgebra normalize_a(const ParamAlgebra& pa, int a1) {
  if (a1 != 0 && a1 != 1) throw DomainError("a_1 normalizes to 0 or 1");
  Bindings b{{"a_1", PolyQ(a1)}};
  for (int al = 2; al <= pa.f; ++al) b.push_back({param_name("a", al), PolyQ()});
  return apply_bindings(pa, "a-normalization", b);
}

ParamAlgebra h_shift(const ParamAlgebra& pa) {
  const auto a1 = pa.a1_normalized();
  if (!a1 || *a1 != 1) throw OrderingError("the H-shift needs a_1 normalized to 1");
  const ExtensionLayout l = pa.layout();
  PolyMatrix p = identity_poly(l.dim());
  Bindings bindings;
  const auto free = pa.free_variables();
  for (int al = 1; al < pa.f; ++al) {
    // [S_1, S_a - c H] = (r_1a - 2 a_1 c) H
    const PolyQ r1a = pa.tensor(l.s(0), l.s(al), l.h());
    p(l.s(al), l.h()) = -half(r1a);
    const std::string name = param_name("r", 1, al + 1);
    if (std::find(free.begin(), free.end(), name) != free.end()) bindings.push_back({name, PolyQ()});
  }
  const ParamTensor shifted = change_basis_with_inverse(pa.tensor, p, unipotent_inverse(p));
  ParamAlgebra out = apply_bindings(pa, "h-shift", bindings);
  if (!(shifted == out.tensor)) throw std::logic_error("H-shift does not realize r_1a := 0");
  return out;
}

ScalarMatrix a_normalization_matrix(const StructTensor& t, const ExtensionLayout& l) {
  ScalarMatrix p = ScalarMatrix::identity(l.dim());
  std::vector<Scalar> a;
  for (int al = 0; al < l.f; ++al) a.push_back(t(l.s(al), l.h(), l.h()) * Scalar::fraction(1, 2));
  int k = -1;
  for (int al = 0; al < l.f; ++al) {
    if (!a[static_cast<std::size_t>(al)].is_zero()) {
      k = al;
      break;
    }
  }
  if (k < 0) return p;
  const auto uk = static_cast<std::size_t>(k);
  for (int row = 0; row < l.f; ++row) {
    for (int col = 0; col < l.f; ++col) p(l.s(row), l.s(col)) = Scalar();
  }
  p(l.s(0), l.s(k)) = a[uk].inverse();
  int row = 1;
  for (int al = 0; al < l.f; ++al) {
    if (al == k) continue;
    p(l.s(row), l.s(al)) = Scalar(1);
    p(l.s(row), l.s(k)) = -(a[static_cast<std::size_t>(al)] / a[uk]);
    ++row;
  }
  return p;
}

std::vector<PolyQ> side_condition_generators(const ParamAlgebra& pa, bool cross) {
  const ExtensionLayout l = pa.layout();
  const ParamTensor& t = pa.tensor;
  const int m = 2 * pa.n;
  auto y = [&](int i) { return i < pa.n ? l.p(i) : l.b(i - pa.n); };
  std::vector<PolyQ> a;
  std::vector<PolyMatrix> x;
  std::vector<Vec<PolyQ>> rho;
  for (int al = 0; al < pa.f; ++al) {
    const std::size_t s = l.s(al);
    a.push_back(half(t(s, l.h(), l.h())));
    PolyMatrix xm(m, m);
    Vec<PolyQ> r(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        xm(i, j) = t(s, y(i), y(j));
        if (i == j) xm(i, j) -= a.back();
      }
      r[static_cast<std::size_t>(i)] = t(y(i), s, l.h());
    }
    x.push_back(std::move(xm));
    rho.push_back(std::move(r));
  }
  std::vector<PolyQ> gens;
  auto keep = [&](const PolyQ& p) {
    if (!p.is_zero()) gens.push_back(p);
  };
  const auto f = static_cast<std::size_t>(pa.f);
  for (std::size_t al = 0; al < f; ++al) {
    for (std::size_t be = al + 1; be < f; ++be) {
      const PolyMatrix c = x[al] * x[be] - x[be] * x[al];
      for (std::size_t i = 0; i < c.rows(); ++i) {
        for (std::size_t j = 0; j < c.cols(); ++j) keep(c(i, j));
      }
    }
  }
  for (std::size_t al = 0; al < f; ++al) {
    for (std::size_t be = 0; be < f; ++be) {
      if (al != be && !cross) continue;
      const Vec<PolyQ> v = heisenleib::apply(x[al], rho[be]);
      for (std::size_t i = 0; i < v.size(); ++i) keep(v[i] - a[al] * rho[be][i]);
    }
  }
  return gens;
}

bool in_rational_span(const std::vector<PolyQ>& gens, const PolyQ& p) {
  if (p.is_zero()) return true;
  std::map<Monomial, std::size_t, GrLexDescending> column;
  auto index = [&](const PolyQ& q) {
    for (const auto& [mono, c] : q.terms()) column.try_emplace(mono, column.size());
  };
  for (const auto& g : gens) index(g);
  index(p);
  ScalarMatrix m(gens.size() + 1, column.size());
  auto fill = [&](std::size_t row, const PolyQ& q) {
    for (const auto& [mono, c] : q.terms()) m(row, column.at(mono)) = Scalar(c);
  };
  for (std::size_t r = 0; r < gens.size(); ++r) fill(r, gens[r]);
  fill(gens.size(), p);
  const std::size_t with = rank(m);
  const std::size_t without = rank(m.block(0, 0, gens.size(), column.size()));
  return with == without;
}

Bindings CascadeResult::all_bindings() const {
  Bindings out;
  for (const auto& s : stages) out.insert(out.end(), s.bindings.begin(), s.bindings.end());
  return out;
}

const StageTranscript* CascadeResult::stage(const std::string& name) const {
  for (const auto& s : stages) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

namespace {

std::vector<std::string> theorem_free_variables(int n, int f, int a1) {
  std::vector<std::string> out;
  for (int al = 1; al <= f; ++al) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        out.push_back(param_name("A", al, i, j));
        if (i <= j) {
          out.push_back(param_name("C", al, i, j));
          out.push_back(param_name("D", al, i, j));
        }
      }
    }
    if (a1 == 0) {
      for (int i = 1; i <= n; ++i) {
        out.push_back(param_name("rho1", al, i));
        out.push_back(param_name("rho2", al, i));
      }
      for (int be = 1; be <= f; ++be) out.push_back(param_name("r", al, be));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CascadeResult run_cascade(int n, int f, int a1) {
  CascadeResult res;
  res.n = n;
  res.f = f;
  res.a1 = a1;
  ParamAlgebra pa = parametric_extension(n, f);

  auto run_stage = [&](const std::string& name, std::vector<ConstraintReport> reports) {
    StageTranscript st;
    st.name = name;
    st.bindings = extract_forced_bindings(reports);
    st.reports = std::move(reports);
    pa = apply_bindings(pa, name, st.bindings);
    res.stages.push_back(std::move(st));
  };

  {
    pa = gamma_eliminate(pa);
    StageTranscript st;
    st.name = "gamma";
    st.bindings = pa.applied.back().bindings;
    st.notes.push_back("H-components of [S~,P] and [S~,B] vanish identically after the shift");
    res.stages.push_back(std::move(st));
  }
  {
    const auto all = jacobi_residual_system(pa);
    const auto table = table_reports(all);
    run_stage("jacobi", table);
    res.stages.back().notes.push_back(std::to_string(all.size()) + " triples with nonzero residual, " +
                                      std::to_string(table.size()) + " used for elimination");
  }
  run_stage("annihilator", annihilator_residual_system(pa));
  run_stage("commutation", commutation_residual_system(pa));
  if (f >= 2) {
    const ArarReport ar = verify_arar(pa);
    StageTranscript st;
    st.name = "arar-identity";
    st.reports = ar.pairs;
    st.notes.push_back(ar.identity_holds ? "H-coefficient of every (S1,Sa,Sb) residual matches the identity"
                                         : "identity FAILED");
    res.stages.push_back(std::move(st));
  }
  {
    pa = normalize_a(pa, a1);
    StageTranscript st;
    st.name = "a-normalization";
    st.bindings = pa.applied.back().bindings;
    res.stages.push_back(std::move(st));
  }
  if (a1 == 1) {
    if (f >= 2) run_stage("arar", verify_arar(pa).pairs);
    run_stage("annihilator-s1", annihilator_residual_system(pa));
    if (f >= 2) {
      pa = h_shift(pa);
      StageTranscript st;
      st.name = "h-shift";
      st.bindings = pa.applied.back().bindings;
      st.notes.push_back("S~_a = S_a - (r_1a/2) H for a > 1, valid because a_1 = 1");
      res.stages.push_back(std::move(st));
    }
  }

  for (const auto& rep : jacobi_residual_system(pa)) {
    res.residuals.insert(res.residuals.end(), rep.residual_polys.begin(), rep.residual_polys.end());
  }
  const auto stated = side_condition_generators(pa, false);
  const auto full = side_condition_generators(pa, true);
  res.residuals_in_stated_span = std::all_of(res.residuals.begin(), res.residuals.end(),
                                             [&](const PolyQ& p) { return in_rational_span(stated, p); });
  res.residuals_in_full_span = std::all_of(res.residuals.begin(), res.residuals.end(),
                                           [&](const PolyQ& p) { return in_rational_span(full, p); });
  if (!res.residuals_in_stated_span && res.residuals_in_full_span) {
    res.notes.push_back("residuals need the cross conditions X_a rho^b = a_a rho^b for a != b");
  }
  res.free_variables = pa.free_variables();
  std::sort(res.free_variables.begin(), res.free_variables.end());
  res.expected_free_variables = theorem_free_variables(n, f, a1);
  res.final_algebra = std::move(pa);
  return res;
}

}  // namespace heisenleib
