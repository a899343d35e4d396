#include <doctest.h>

#include "heisenleib/errors.hpp"
#include "heisenleib/poly.hpp"
#include "heisenleib/scalar.hpp"

using namespace heisenleib;

TEST_CASE("rational arithmetic") {
  CHECK(Scalar::fraction(1, 2) + Scalar::fraction(1, 3) == Scalar::fraction(5, 6));
  CHECK(Scalar::fraction(2, 4) == Scalar::fraction(1, 2));
  CHECK((Scalar(3) / Scalar(6)).to_string() == "1/2");
  CHECK(Scalar(0).to_string() == "0/1");
}

TEST_CASE("imaginary unit squares to -1") {
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK((Scalar::i() * Scalar::i()).is_rational());
}

TEST_CASE("inverse in Q(sqrt 2)") {
  const Scalar x = Scalar::quadratic(1, 1, 2);
  const Scalar expected = Scalar::quadratic(-1, 1, 2);
  CHECK(x.inverse() == expected);
  // independent check by expansion: (1 + s)(-1 + s) = -1 + 2 = 1
  CHECK(x * expected == Scalar(1));
  CHECK(x.norm() == Rational(-1));
}

TEST_CASE("zero has no inverse") {
  CHECK_THROWS_AS(Scalar(0).inverse(), DomainError);
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), DomainError);
}

TEST_CASE("mixed radicands are rejected") {
  CHECK_THROWS_AS(Scalar::quadratic(0, 1, 2) + Scalar::quadratic(0, 1, 3), IncompatibleFieldError);
  CHECK_THROWS_AS(Scalar::quadratic(0, 1, 2) * Scalar::i(), IncompatibleFieldError);
  // a vanishing radical part drops the radicand, so this mixes freely
  CHECK_NOTHROW(Scalar::quadratic(5, 0, 2) + Scalar::i());
}

TEST_CASE("radicand validity") {
  CHECK(is_valid_radicand(2));
  CHECK(is_valid_radicand(-1));
  CHECK(is_valid_radicand(-6));
  CHECK_FALSE(is_valid_radicand(0));
  CHECK_FALSE(is_valid_radicand(1));
  CHECK_FALSE(is_valid_radicand(4));
  CHECK_FALSE(is_valid_radicand(-12));
  CHECK_THROWS_AS(Scalar::quadratic(0, 1, 8), DomainError);
}

TEST_CASE("text round trip") {
  for (const Scalar& x : {Scalar(0), Scalar(-7), Scalar::fraction(-3, 4), Scalar::quadratic(Rational(1, 2), -2, 5),
                          Scalar::quadratic(0, 1, -1)}) {
    CHECK(Scalar::parse(x.to_string()) == x);
    CHECK(Scalar::parse(x.to_display()) == x);
  }
  CHECK(Scalar::quadratic(Rational(1, 2), Rational(-1, 3), 2).to_string() == "1/2-1/3*sqrt(2)");
  CHECK(Scalar::parse("3") == Scalar(3));
  CHECK(Scalar::parse("sqrt(2)") == Scalar::quadratic(0, 1, 2));
  CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
  CHECK_THROWS_AS(Scalar::parse("abc"), Error);
  CHECK_THROWS_AS(Scalar::parse("1/2 + 1/3*sqrt(2)"), Error);
}

TEST_CASE("real sign") {
  CHECK(Scalar::fraction(-1, 3).real_sign() == -1);
  CHECK(Scalar(0).real_sign() == 0);
  CHECK(Scalar::quadratic(-1, 1, 2).real_sign() == 1);   // sqrt 2 > 1
  CHECK(Scalar::quadratic(2, -1, 5).real_sign() == -1);  // sqrt 5 > 2
  CHECK_THROWS_AS(Scalar::i().real_sign(), DomainError);
}

TEST_CASE("field square roots") {
  Scalar root;
  REQUIRE(field_sqrt(Scalar(-1), root));
  CHECK(root * root == Scalar(-1));
  REQUIRE(field_sqrt(Scalar::fraction(9, 4), root));
  CHECK(root * root == Scalar::fraction(9, 4));
  REQUIRE(field_sqrt(Scalar(-4), root));
  CHECK(root * root == Scalar(-4));
  REQUIRE(field_sqrt(Scalar(8), root));
  CHECK(root * root == Scalar(8));
}

TEST_CASE("field names") {
  CHECK(parse_field("C") == Field::Complex);
  CHECK(parse_field("R") == Field::Real);
  CHECK_THROWS_AS(parse_field("Q"), Error);
}

namespace {

VarListPtr vars_abc() { return make_varlist({"a", "b", "c"}); }

}  // namespace

TEST_CASE("difference of squares") {
  auto v = vars_abc();
  const PolyQ a = PolyQ::variable(v, "a"), b = PolyQ::variable(v, "b");
  const PolyQ p = (a + b) * (a - b);
  CHECK(p == a * a - b * b);
  CHECK(p.to_string() == "a^2 - b^2");
  CHECK((p + (-p)).is_zero());
}

TEST_CASE("the arar residual form") {
  auto v = make_varlist({"a_1", "a_2", "a_3", "r_1_2", "r_1_3", "r_2_3"});
  auto x = [&](const char* n) { return PolyQ::variable(v, n); };
  const PolyQ p = x("a_1") * x("r_2_3") * PolyQ(1) + (-(x("a_2") * x("r_1_3"))) + x("a_3") * x("r_1_2");
  CHECK(p.degree() == 2);
  CHECK(p.terms().size() == 3);
  CHECK(p.evaluate({{"a_1", 1}, {"a_2", 2}, {"a_3", 3}, {"r_1_2", 4}, {"r_1_3", 5}, {"r_2_3", 6}}) == Scalar(1 * 6 - 2 * 5 + 3 * 4));
}

TEST_CASE("substitution") {
  auto v = make_varlist({"sigma2", "x", "E", "A", "c1", "c2"});
  auto x = [&](const char* n) { return PolyQ::variable(v, n); };
  CHECK((x("sigma2") * x("x")).substitute({{"sigma2", PolyQ(0)}}).is_zero());
  CHECK((x("E") + x("A")).substitute({{"E", -x("A")}}).is_zero());
  const PolyQ det = -(x("c1") * x("c1")) + x("c2") * x("c2");
  CHECK(det.substitute({{"c1", PolyQ(1)}, {"c2", PolyQ(1)}}).is_zero());
  CHECK(det.evaluate({{"c1", 1}, {"c2", 1}}) == Scalar(0));
  const PolyQ partial = det.substitute({{"c1", PolyQ(2)}});
  CHECK(partial.used_names() == std::vector<std::string>{"c2"});
  CHECK_THROWS_AS(det.evaluate({{"c1", 1}}), UnknownIndeterminateError);
}

TEST_CASE("grlex order and degree") {
  auto v = vars_abc();
  const PolyQ a = PolyQ::variable(v, "a"), b = PolyQ::variable(v, "b"), c = PolyQ::variable(v, "c");
  CHECK((c + b * b + a).to_string() == "b^2 + a + c");
  CHECK(PolyQ(0).degree() == -1);
  CHECK(PolyQ(5).degree() == 0);
  CHECK((a * b * c).degree() == 3);
  CHECK((Rational(3) * a + b).linear_coefficient(0) == Rational(3));
}

TEST_CASE("real roots of quadratics") {
  auto v = make_varlist({"c"});
  const PolyQ c = PolyQ::variable(v, "c");
  CHECK_FALSE(quadratic_real_root_exists(c * c + PolyQ(1)));
  CHECK(quadratic_real_root_exists(c * c - PolyQ(1)));
  // det(c diag(1,-1) + [[0,1],[-1,0]]) = -c^2 + 1
  CHECK(quadratic_real_root_exists(-(c * c) + PolyQ(1)));
  CHECK(quadratic_real_root_exists(c * c));
  CHECK(quadratic_real_root_exists(Rational(2) * c + PolyQ(1)));
  CHECK(quadratic_real_root_exists(PolyQ(0)));
  CHECK_FALSE(quadratic_real_root_exists(PolyQ(3)));
  CHECK_THROWS_AS(quadratic_real_root_exists(c * c * c), UnsupportedDegreeError);
}
