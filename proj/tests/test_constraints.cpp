#include <doctest.h>

#include <algorithm>
#include <set>

#include "heisenleib/constraints.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace heisenleib;

using oracles::binding_set;

namespace {

const ConstraintReport* find_report(const std::vector<ConstraintReport>& reports, const std::string& source) {
  for (const auto& r : reports) {
    if (r.source == source) return &r;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("parametric extension shape") {
  const ParamAlgebra pa = parametric_extension(1, 1);
  CHECK(pa.tensor.dim() == 4);
  const auto free = pa.free_variables();
  for (const char* name : {"a_1", "b_1", "sigma1_1_1", "sigma2_1_1", "tau1_1_1", "tau2_1_1", "gamma1_1_1",
                           "gamma2_1_1", "rho1_1_1", "rho2_1_1", "A_1_1_1", "C_1_1_1", "D_1_1_1", "E_1_1_1", "r_1_1"}) {
    CHECK_MESSAGE(std::count(free.begin(), free.end(), name) == 1, name);
  }

  const ParamAlgebra two = parametric_extension(1, 2);
  const auto names = two.vars->names();
  for (const char* name : {"r_1_1", "r_1_2", "r_2_1", "r_2_2", "mu_1_2_1", "nu_1_2_1"}) {
    CHECK(std::count(names.begin(), names.end(), name) == 1);
  }

  const ParamAlgebra wide = parametric_extension(2, 1);
  CHECK(wide.vars->find("sigma1_1_2").has_value());
  CHECK(wide.vars->find("A_1_2_2").has_value());
  CHECK_FALSE(wide.vars->find("A_1_3_1").has_value());
}

TEST_CASE("gamma elimination") {
  const ParamAlgebra pa = parametric_extension(1, 1);
  const ParamTensor shifted = gamma_transformed_tensor(pa);
  const ExtensionLayout l = pa.layout();
  CHECK(shifted(l.s(0), l.p(0), l.h()).is_zero());
  CHECK(shifted(l.s(0), l.b(0), l.h()).is_zero());

  const ParamAlgebra elim = gamma_eliminate(pa);
  CHECK(elim.has_stage("gamma"));
  for (const auto& v : elim.free_variables()) CHECK(v.rfind("gamma", 0) != 0);

  // applying it again changes nothing
  CHECK(gamma_eliminate(elim).tensor == elim.tensor);
}

TEST_CASE("worked Jacobi example") {
  const ParamAlgebra pa = gamma_eliminate(parametric_extension(1, 1));
  const auto reports = jacobi_residual_system(pa);
  const ConstraintReport* r = find_report(reports, "(S,P,H)");
  REQUIRE(r != nullptr);
  const PolyQ h = r->component("H");
  CHECK(h == pa.var("sigma2_1_1"));
  CHECK(h.to_string() == "sigma2_1_1");
  CHECK(r->table_row.find("sigma2 = 0") != std::string::npos);

  // pure nilradical triples carry no constraint
  CHECK(find_report(reports, "(H,P,B)") == nullptr);
  CHECK(find_report(reports, "(P,B,H)") == nullptr);

  const ParamAlgebra pa2 = gamma_eliminate(parametric_extension(1, 2));
  const auto reports2 = jacobi_residual_system(pa2);
  const ConstraintReport* nu = find_report(reports2, "(S1,S2,P)");
  REQUIRE(nu != nullptr);
  CHECK(nu->component("H") == -pa2.var("nu_1_2_1"));
}

TEST_CASE("stage ordering") {
  const ParamAlgebra pa = parametric_extension(1, 2);
  CHECK_THROWS_AS(annihilator_residual_system(pa), OrderingError);
  CHECK_THROWS_AS(commutation_residual_system(pa), OrderingError);
  CHECK_THROWS_AS(verify_arar(pa), OrderingError);
  CHECK_THROWS_AS(verify_arar(parametric_extension(1, 1)), DomainError);
}

TEST_CASE("forced bindings") {
  auto v = make_varlist({"A_1_1_1", "E_1_1_1", "sigma2_1_1", "A_2_1_1", "C_1_1_1", "C_2_1_1"});
  auto x = [&](const char* n) { return PolyQ::variable(v, n); };

  std::vector<ConstraintReport> reports(3);
  reports[0].residual_polys = {x("sigma2_1_1")};
  reports[1].residual_polys = {x("E_1_1_1") + x("A_1_1_1")};
  reports[2].residual_polys = {x("A_1_1_1") * x("C_2_1_1") - x("A_2_1_1") * x("C_1_1_1")};
  const Bindings b = extract_forced_bindings(reports);
  CHECK(binding_set(b) == std::set<std::string>{"sigma2_1_1 := 0", "E_1_1_1 := -A_1_1_1"});
  CHECK(reports[2].forced.empty());
  CHECK(reports[0].forced.size() == 1);

  std::vector<ConstraintReport> bad(2);
  bad[0].residual_polys = {x("A_1_1_1")};
  bad[1].residual_polys = {x("A_1_1_1") - PolyQ(1)};
  CHECK_THROWS_AS(extract_forced_bindings(bad), InconsistencyError);
}

TEST_CASE("bindings are sound on their source residuals") {
  ParamAlgebra pa = gamma_eliminate(parametric_extension(2, 2));
  auto reports = jacobi_residual_system(pa);
  const Bindings all = extract_forced_bindings(reports);
  std::map<std::string, PolyQ> map;
  for (const auto& b : all) map[b.var] = b.value;
  for (const auto& r : reports) {
    for (const auto& p : r.residual_polys) {
      if (p.degree() <= 1) CHECK(p.substitute(map).is_zero());
    }
  }
}

TEST_CASE("annihilator rows") {
  ParamAlgebra pa = gamma_eliminate(parametric_extension(1, 1));
  auto jr = table_reports(jacobi_residual_system(pa));
  pa = apply_bindings(pa, "jacobi", extract_forced_bindings(jr));
  const auto reports = annihilator_residual_system(pa);
  const ConstraintReport* g = find_report(reports, "[[S,P]+[P,S],P]");
  REQUIRE(g != nullptr);
  CHECK(g->component("H") == -(pa.var("C_1_1_1") + pa.var("G_1_1_1")));
  const ConstraintReport* b = find_report(reports, "[[S,P]+[P,S],B]");
  REQUIRE(b != nullptr);
  CHECK(b->component("H") == pa.var("a_1") + pa.var("b_1") + pa.var("A_1_1_1") + pa.var("F_1_1_1"));
}

TEST_CASE("commutation residuals") {
  const CascadeResult one = run_cascade(1, 1, 0);
  const StageTranscript* c = one.stage("commutation");
  REQUIRE(c != nullptr);
  REQUIRE(c->reports.size() == 1);
  const ParamAlgebra& fin = one.final_algebra;
  auto x = [&](const char* n) { return fin.var(n); };
  const PolyQ rho1 = x("rho1_1_1"), rho2 = x("rho2_1_1"), a = x("a_1"), A = x("A_1_1_1"), C = x("C_1_1_1"),
              D = x("D_1_1_1");
  const auto& polys = c->reports[0].residual_polys;
  REQUIRE(polys.size() == 2);
  // (A - a) rho1 + C rho2 and D rho1 - (A + a) rho2, up to sign
  const PolyQ e1 = (A - a) * rho1 + C * rho2, e2 = D * rho1 - (A + a) * rho2;
  CHECK((polys[0] == e1 || polys[0] == -e1));
  CHECK((polys[1] == e2 || polys[1] == -e2));

  // f = 2: X1 X2 - X2 X1 vanishes exactly on the proportionality cross products
  const CascadeResult two = run_cascade(1, 2, 0);
  const StageTranscript* c2 = two.stage("commutation");
  REQUIRE(c2 != nullptr);
  const ParamAlgebra& f2 = two.final_algebra;
  auto y = [&](const char* n) { return f2.var(n); };
  const std::vector<PolyQ> cross{y("A_1_1_1") * y("C_2_1_1") - y("A_2_1_1") * y("C_1_1_1"),
                                 y("A_1_1_1") * y("D_2_1_1") - y("A_2_1_1") * y("D_1_1_1"),
                                 y("C_1_1_1") * y("D_2_1_1") - y("C_2_1_1") * y("D_1_1_1")};
  std::vector<PolyQ> ll;
  for (const auto& r : c2->reports) {
    if (r.table_row == "X_a X_b = X_b X_a") {
      for (const auto& p : r.residual_polys) ll.push_back(p);
    }
  }
  REQUIRE_FALSE(ll.empty());
  for (const auto& p : ll) CHECK(in_rational_span(cross, p));
  for (const auto& q : cross) CHECK(in_rational_span(ll, q));
}

TEST_CASE("arar identity") {
  const CascadeResult res = run_cascade(1, 2, 1);
  const StageTranscript* arar = res.stage("arar");
  REQUIRE(arar != nullptr);
  CHECK(binding_set(arar->bindings) == std::set<std::string>{"r_1_1 := 0", "r_2_2 := 0", "r_2_1 := -r_1_2"});
  const StageTranscript* shift = res.stage("h-shift");
  REQUIRE(shift != nullptr);
  CHECK(binding_set(shift->bindings) == std::set<std::string>{"r_1_2 := 0"});
  CHECK(res.stage("arar-identity") != nullptr);
}

TEST_CASE("replay reproduces the constrained tensor") {
  for (int a1 : {0, 1}) {
    const CascadeResult res = run_cascade(1, 2, a1);
    const ParamAlgebra again = replay(1, 2, res.final_algebra.applied);
    CHECK(again.tensor == res.final_algebra.tensor);
  }
}

TEST_CASE("a-normalization and the h-shift") {
  ParamAlgebra pa = gamma_eliminate(parametric_extension(1, 2));
  const ParamAlgebra norm = normalize_a(pa, 1);
  REQUIRE(norm.a1_normalized().has_value());
  CHECK(*norm.a1_normalized() == Rational(1));
  CHECK_FALSE(pa.a1_normalized().has_value());

  // the concrete S-block change of basis reaching a = (1, 0)
  ExtensionSpec s = ExtensionSpec::zeros(1, 2);
  s.a = {Scalar(1), Scalar(0)};
  s.X = {ScalarMatrix(2, 2), testing::mat({{1, 0}, {0, -1}})};
  const StructTensor t = build_extension(s);
  ScalarMatrix mix = ScalarMatrix::identity(5);
  mix(0, 0) = Scalar(2);
  mix(0, 1) = Scalar(3);
  mix(1, 0) = Scalar(1);
  const StructTensor mixed = change_basis(t, mix);
  const ExtensionLayout layout{1, 2};
  const StructTensor back = change_basis(mixed, a_normalization_matrix(mixed, layout));
  CHECK(back(0, layout.h(), layout.h()) == Scalar(2));
  CHECK(back(1, layout.h(), layout.h()) == Scalar(0));
}

using oracles::expected_annihilator;
using oracles::expected_jacobi;

TEST_CASE("cascade bindings match the tables") {
  for (int n : {1, 2}) {
    for (int f : {1, 2}) {
      for (int a1 : {0, 1}) {
        CAPTURE(n);
        CAPTURE(f);
        CAPTURE(a1);
        const CascadeResult res = run_cascade(n, f, a1);
        CHECK(binding_set(res.stage("jacobi")->bindings) == expected_jacobi(n, f));
        CHECK(binding_set(res.stage("annihilator")->bindings) == expected_annihilator(n, f));
        CHECK(res.free_variables == res.expected_free_variables);
        CHECK(res.residuals_in_full_span);
        if (f == 1 || a1 == 1) CHECK(res.residuals_in_stated_span);
        if (a1 == 1) {
          std::set<std::string> rho;
          for (int a = 1; a <= f; ++a) {
            for (int i = 1; i <= n; ++i) {
              rho.insert(param_name("rho1", a, i) + " := 0");
              rho.insert(param_name("rho2", a, i) + " := 0");
            }
          }
          const auto got = binding_set(res.stage("annihilator-s1")->bindings);
          for (const auto& b : rho) CHECK(got.count(b) == 1);
        }
      }
    }
  }
}

TEST_CASE("a1 = 0 with two extensions needs the cross condition") {
  const CascadeResult res = run_cascade(1, 2, 0);
  CHECK_FALSE(res.residuals_in_stated_span);
  CHECK(res.residuals_in_full_span);
}
