#include <doctest.h>

#include <algorithm>
#include <set>

#include "heisenleib/catalog.hpp"
#include "support.hpp"

using namespace heisenleib;
using testing::mat;
using testing::unit;
using testing::vec;

namespace {

std::set<std::string> ids(Field field, int f, int a1) {
  std::set<std::string> out;
  for (const auto& e : catalog_entries(field)) {
    if (e.f == f && e.a1 == a1) out.insert(e.id);
  }
  return out;
}

std::size_t case_count(Field field, int f, int a1, const Params& discrete) {
  std::size_t n = 0;
  for (const auto& c : catalog_cases(field)) {
    if (c.f == f && c.a1 == a1 && c.discrete == discrete) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("family counts") {
  CHECK(ids(Field::Complex, 1, 1) == std::set<std::string>{"H1a1C-diag", "H1a1C-jordan"});
  CHECK(ids(Field::Real, 1, 1).size() == 3);
  CHECK(case_count(Field::Real, 1, 0, {{"r", Scalar(0)}}) == 2);
  CHECK(ids(Field::Complex, 1, 0) == std::set<std::string>{"H1a0C"});
  CHECK(ids(Field::Complex, 2, 1) == std::set<std::string>{"H2a1C"});
  CHECK(ids(Field::Complex, 2, 0).empty());
  CHECK(ids(Field::Real, 2, 0).empty());
  CHECK(find_entry("H1a0C", Field::Complex).slot("r")->samples.size() == 2);
  CHECK(find_entry("H1a0C", Field::Real).slot("r")->samples.size() == 3);
}

TEST_CASE("unknown ids and parameters") {
  CHECK_THROWS_AS(find_entry("H1a0R", Field::Complex), DomainError);
  try {
    find_entry("nope", Field::Real);
    FAIL("no error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("H1a1R") != std::string::npos);
  }
  CHECK_THROWS_AS(build_entry("H1a1C-diag", {{"A", Scalar(-1)}}, Field::Real), DomainError);
  CHECK_THROWS_AS(build_entry("H1a1R", {{"C", Scalar(0)}}, Field::Real), DomainError);
  CHECK_THROWS_AS(build_entry("H1a0C", {{"r", Scalar(2)}}, Field::Complex), DomainError);
  CHECK_THROWS_AS(build_entry("H1a0C", {}, Field::Complex), DomainError);
  CHECK_NOTHROW(build_entry("H1a1C-diag", {{"A", Scalar::i()}}, Field::Complex));
  CHECK_THROWS_AS(build_entry("H1a1C-diag", {{"A", -Scalar::i()}}, Field::Complex), DomainError);
}

TEST_CASE("built entries") {
  // S=0, H=1, P=2, B=3
  const StructTensor d = build_entry("H1a1C-diag", {{"A", Scalar(0)}}, Field::Complex);
  CHECK(d.product(0, 2) == unit(4, 2));
  CHECK(d.product(0, 3) == unit(4, 3));
  CHECK(d.product(0, 1) == vec({0, 2, 0, 0}));

  const StructTensor r = build_entry("H1a0R", {{"r", Scalar(-1)}}, Field::Real);
  CHECK(r.product(0, 2) == unit(4, 3));
  CHECK(r.product(0, 3) == vec({0, 0, -1, 0}));
  CHECK(r.product(0, 0) == vec({0, -1, 0, 0}));

  const StructTensor two = build_entry("H2a1C", {}, Field::Complex);
  CHECK(two.dim() == 5);
  const ExtensionLayout l{1, 2};
  CHECK(left_action_block(two, l, 0) == mat({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK(left_action_block(two, l, 1) == mat({{0, 0, 0}, {0, 1, 0}, {0, 0, -1}}));
}

TEST_CASE("Lie flags of entries") {
  CHECK_FALSE(is_lie(build_entry("H1a0C", {{"r", Scalar(1)}}, Field::Complex)));
  CHECK(is_lie(build_entry("H1a1C-diag", {{"A", Scalar(2)}}, Field::Complex)));
  const StructTensor t = build_entry("H2a1R", {}, Field::Real);
  CHECK(is_lie(t));
  CHECK(t.dim() == 5);
}

TEST_CASE("display oracle agrees with the builder") {
  for (Field field : {Field::Complex, Field::Real}) {
    for (const auto& e : catalog_entries(field)) {
      for (const auto& p : sample_parameters(e)) {
        const StructTensor t = build_entry(e.id, p, field);
        const auto blocks = displayed_left_blocks(e.id, p);
        REQUIRE(blocks.size() == static_cast<std::size_t>(e.f));
        for (int a = 0; a < e.f; ++a) CHECK(left_action_block(t, {e.n, e.f}, a) == blocks[a]);
      }
    }
  }
}

TEST_CASE("entry verification") {
  for (Field field : {Field::Complex, Field::Real}) {
    for (const auto& rep : verify_catalog(field)) {
      CAPTURE(rep.id);
      CAPTURE(params_to_string(rep.params));
      CHECK(rep.ok());
      CHECK(rep.certificate.proved());
      CHECK(rep.lie_flag == rep.lie_expected);
    }
  }
}

TEST_CASE("condensation witnesses") {
  const CondensationWitness w = condensation_witness("H1a1R", "H1a1C-diag", {{"C", Scalar(2)}});
  CHECK(w.verified);
  CHECK(change_basis(w.real_tensor, w.matrix) == w.complex_tensor);
  CHECK(w.complex_params.at("A") == Scalar::quadratic(0, 2, -1));

  for (long r : {0, 1, -1}) {
    const CondensationWitness h = condensation_witness("H1a0R", "H1a0C", {{"r", Scalar(r)}});
    CHECK(h.verified);
    CHECK(h.complex_params.at("r") == Scalar(r == 0 ? 0 : 1));
  }
  const CondensationWitness h2 = condensation_witness("H2a1R", "H2a1C", {});
  CHECK(h2.verified);

  const CondensationWitness flip = condensation_witness("H1a0C", "H1a0C", {{"r", Scalar(-1)}});
  CHECK(flip.verified);
  CHECK(change_basis(flip.real_tensor, flip.matrix) == build_entry("H1a0C", {{"r", Scalar(1)}}, Field::Complex));

  const CondensationWitness id = condensation_witness("H1a1C-jordan", "H1a1C-jordan", {});
  CHECK(id.matrix == ScalarMatrix::identity(4));

  CHECK_THROWS_AS(condensation_witness("H1a1R", "H2a1C", {{"C", Scalar(1)}}), NoWitnessError);
}

TEST_CASE("distinctness evidence") {
  const DistinctnessReport c = distinctness_report(Field::Complex);
  auto pair = [&](const DistinctnessReport& rep, const std::string& x, const std::string& y) {
    for (const auto& p : rep.pairs) {
      if ((p.first == x && p.second == y) || (p.first == y && p.second == x)) return p;
    }
    FAIL("pair not found: " << x << " / " << y);
    return PairComparison{};
  };
  const PairComparison r01 = pair(c, "H1a0C[r=0]", "H1a0C[r=1]");
  CHECK(std::count(r01.separated_by.begin(), r01.separated_by.end(), "is_lie") == 1);
  const PairComparison dims = pair(c, "H1a1C-diag", "H2a1C");
  CHECK(std::count(dims.separated_by.begin(), dims.separated_by.end(), "dim") == 1);
  const PairComparison jordan = pair(c, "H1a1C-diag", "H1a1C-jordan");
  CHECK_FALSE(jordan.flagged);
  for (const auto& p : c.pairs) CHECK_FALSE(p.flagged);

  // over R the two signs of r are isomorphic in both a = 0 families
  const DistinctnessReport r = distinctness_report(Field::Real);
  std::size_t flagged = 0;
  for (const auto& p : r.pairs) {
    if (!p.flagged) continue;
    ++flagged;
    REQUIRE(p.isomorphism.has_value());
  }
  CHECK(flagged == 2);
  CHECK(pair(r, "H1a0C[r=1]", "H1a0C[r=-1]").flagged);
  CHECK(pair(r, "H1a0R[r=1]", "H1a0R[r=-1]").flagged);
}
