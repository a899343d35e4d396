#include <doctest.h>

#include "heisenleib/catalog.hpp"
#include "heisenleib/nilpotency.hpp"
#include "support.hpp"

using namespace heisenleib;
using testing::Gen;

namespace {

constexpr int kCases = 10000;

using testing::random_algebra;
using testing::random_spec;
using testing::random_square;
using testing::trace_oracle;

}  // namespace

TEST_CASE("annihilator contains squares and symmetrized products") {
  Gen g(11);
  std::vector<StructTensor> pool;
  for (int i = 0; i < 40; ++i) pool.push_back(random_algebra(g));
  std::vector<Subspace> ann;
  for (const auto& t : pool) ann.push_back(left_annihilator(t));
  for (int c = 0; c < kCases; ++c) {
    const std::size_t k = static_cast<std::size_t>(g.integer(0, static_cast<long>(pool.size()) - 1));
    const StructTensor& t = pool[k];
    const Vec<Scalar> x = g.vector(t.dim()), y = g.vector(t.dim());
    REQUIRE(ann[k].contains(bracket(t, x, x)));
    Vec<Scalar> s = bracket(t, x, y);
    const Vec<Scalar> yx = bracket(t, y, x);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += yx[i];
    REQUIRE(ann[k].contains(s));
  }
}

TEST_CASE("fingerprint is invariant under change of basis") {
  Gen g(23);
  std::vector<StructTensor> pool;
  for (Field field : {Field::Complex, Field::Real}) {
    for (const auto& e : catalog_entries(field)) {
      for (const auto& p : sample_parameters(e)) {
        pool.push_back(build_entry(e.id, p, field));
      }
    }
  }
  pool.push_back(heisenberg(1));
  pool.push_back(heisenberg(2));
  std::vector<Fingerprint> fps;
  for (const auto& t : pool) fps.push_back(fingerprint(t));
  for (int c = 0; c < kCases; ++c) {
    const std::size_t k = static_cast<std::size_t>(c) % pool.size();
    const StructTensor moved = change_basis(pool[k], g.invertible(pool[k].dim()));
    REQUIRE(fingerprint(moved) == fps[k]);
  }
}

TEST_CASE("matrix nilpotency agrees with the trace oracle") {
  Gen g(37);
  int nilpotent = 0;
  for (int c = 0; c < kCases; ++c) {
    const ScalarMatrix m = random_square(g, static_cast<std::size_t>(g.integer(1, 4)));
    const bool expected = trace_oracle(m);
    REQUIRE(matrix_nilpotent(m) == expected);
    nilpotent += expected ? 1 : 0;
  }
  CHECK(nilpotent > kCases / 10);
  CHECK(nilpotent < kCases * 9 / 10);
}

TEST_CASE("field axioms in quadratic fields") {
  Gen g(41);
  for (long d : {-1L, 2L, 5L}) {
    for (int c = 0; c < kCases; ++c) {
      const Scalar x = g.scalar(d), y = g.scalar(d), z = g.scalar(d);
      REQUIRE((x * y) * z == x * (y * z));
      REQUIRE((x + y) + z == x + (y + z));
      REQUIRE(x * y == y * x);
      REQUIRE(x + y == y + x);
      REQUIRE(x * (y + z) == x * y + x * z);
      REQUIRE(x - x == Scalar(0));
      if (!x.is_zero()) {
        REQUIRE(x * x.inverse() == Scalar(1));
        REQUIRE((y / x) * x == y);
      }
      REQUIRE(Scalar::parse(x.to_string()) == x);
    }
  }
}

TEST_CASE("polynomial canonical form and substitution") {
  Gen g(53);
  auto vars = make_varlist({"a", "b", "c"});
  auto random_poly = [&](int terms) {
    PolyQ p;
    for (int t = 0; t < terms; ++t) {
      PolyQ m(g.rational());
      for (const char* v : {"a", "b", "c"}) {
        for (long e = g.integer(0, 2); e > 0; --e) m *= PolyQ::variable(vars, v);
      }
      p += m;
    }
    return p;
  };
  for (int c = 0; c < kCases; ++c) {
    const PolyQ p = random_poly(3), q = random_poly(3), r = random_poly(2);
    REQUIRE(p + q == q + p);
    REQUIRE(p * q == q * p);
    REQUIRE(p * (q + r) == p * q + p * r);
    const std::map<std::string, Scalar> point{
        {"a", Scalar(g.rational())}, {"b", Scalar(g.rational())}, {"c", Scalar(g.rational())}};
    // p(a := q) at the point equals p at (a := q(point))
    std::map<std::string, Scalar> shifted = point;
    shifted["a"] = q.evaluate(point);
    REQUIRE(p.substitute({{"a", q}}).evaluate(point) == p.evaluate(shifted));
  }
}

TEST_CASE("valid extensions satisfy the structural invariants") {
  Gen g(67);
  for (int c = 0; c < 2000; ++c) {
    const ExtensionSpec s = random_spec(g);
    const StructTensor t = build_extension(s);
    REQUIRE(is_leibniz(t));
    REQUIRE(t.dim() == static_cast<std::size_t>(2 * s.n + 1 + s.f));
    bool plain = s.r.is_zero();
    for (const auto& v : s.rho) plain = plain && is_zero_vector(v);
    REQUIRE(is_lie(t) == plain);

    const ExtensionLayout l{s.n, s.f};
    REQUIRE(left_action_block(t, l, 0) == expected_left_block(s, 0));
    REQUIRE(right_action_block(t, l, 0) == expected_right_block(s, 0));
    REQUIRE(mubar_bound_check(t, heisenberg_subspace(l)));
    const Subspace ann = left_annihilator(t);
    REQUIRE(ann.contains(t.product(l.s(0), l.s(0))));
    REQUIRE(subspace_closure_checks(t, ann).is_two_sided_ideal);

    const auto der = derived_series(t), low = lower_central_series(t);
    for (std::size_t i = 0; i < std::min(der.size(), low.size()); ++i) REQUIRE(low[i].contains(der[i]));
    if (is_nilpotent(t)) REQUIRE(is_solvable(t));
  }
}
