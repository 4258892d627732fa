#include <doctest.h>

#include <random>

#include "danvar/poly.hpp"
#include "support.hpp"

using namespace danvar;
using testsupport::P;

TEST_CASE("rationals stay in lowest terms") {
  Rational a(6, 4);
  a.canonicalize();
  CHECK(a.get_num() == 3);
  CHECK(a.get_den() == 2);
  const Ring ring = Ring::ambient(1);
  CHECK(to_string(P("2/4*y", ring), ring) == "1/2*y");
  CHECK(to_string(P("0/7", ring), ring) == "0");
}

TEST_CASE("parse transcribes terms directly") {
  const Ring ring = Ring::ambient(1);
  const Poly p = P("x1^2*z - y^2 + 1", ring);
  CHECK(p.size() == 3);
  CHECK(p.coeff({2, 0, 1, 0}) == 1);
  CHECK(p.coeff({0, 2, 0, 0}) == -1);
  CHECK(p.coeff({0, 0, 0, 0}) == 1);
  CHECK(to_string(p, ring) == "x1^2*z - y^2 + 1");
}

TEST_CASE("Laurent exponents add") {
  const Ring lr = Ring::ambient(1, true);
  CHECK(P("x1^-2 * x1^3", lr) == P("x1", lr));
  CHECK(to_string(P("x1^-2", lr), lr) == "x1^-2");
}

TEST_CASE("y^2 - 1 is the product over sigma = {1, -1}") {
  const Ring ring = Ring::ambient(1);
  CHECK(P("y^2 - 1", ring) == P("(y - 1)*(y + 1)", ring));
}

TEST_CASE("parse errors carry positions") {
  const Ring ring = Ring::ambient(2);
  auto position_of = [&](const std::string& text) -> std::size_t {
    try {
      parse_poly(text, ring);
    } catch (const ParseError& e) {
      return e.position();
    }
    return std::string::npos;
  };
  CHECK(position_of("x1 + ") != std::string::npos);
  CHECK(position_of("x1 * * y") == 5);
  CHECK(position_of("x3") != std::string::npos);
  CHECK(position_of("y^-1") != std::string::npos);
  CHECK(position_of("x1^-1") != std::string::npos);  // not a Laurent ring
  CHECK(position_of("1/0") != std::string::npos);
  CHECK(position_of("x1 + 2") == std::string::npos);
  CHECK_THROWS_AS(parse_poly("z^-2", Ring::ambient(1, true)), ParseError);
  CHECK_NOTHROW(parse_poly("x1^-2", Ring::ambient(1, true)));
}

TEST_CASE("weight degree and principal component") {
  const Ring ring = Ring::ambient(1);
  WeightVector w{{3}, 5, std::nullopt};
  CHECK(weight_degree(P("x1^3*y", ring), w) == ExtDegree(14));
  CHECK(weight_degree(Poly(4), w).is_minus_infinity());
  const WeightVector wb = w.bound({2}, 2);
  REQUIRE(wb.dz);
  CHECK(*wb.dz == 4);
  CHECK(weight_degree(P("z + y", ring), wb) == ExtDegree(5));
  CHECK(principal_component(P("z + y", ring), wb) == P("y", ring));
  CHECK(principal_component(P("y^2 - 1", ring), WeightVector{{1}, 7, std::nullopt}) == P("y^2", ring));
  const Poly hom = P("x1^5 + 3*y^3", ring);
  CHECK(is_homogeneous(hom, w));
  CHECK(principal_component(hom, w) == hom);
  CHECK_THROWS_AS(principal_component(Poly(4), w), std::invalid_argument);
}

TEST_CASE("y-division examples") {
  const Ring ring = Ring::ambient(1), lr = Ring::ambient(1, true);
  const Poly q = P("y^2 - 1", ring);
  auto d1 = y_division(P("y^3", ring), q, 1);
  CHECK(d1.quotient == P("y", ring));
  CHECK(d1.remainder == P("y", ring));
  auto d2 = y_division(q, q, 1);
  CHECK(d2.quotient == P("1", ring));
  CHECK(d2.remainder.is_zero());
  auto d3 = y_division(P("x1^-1*y^2", lr), q, 1);
  CHECK(d3.quotient == P("x1^-1", lr));
  CHECK(d3.remainder == P("x1^-1", lr));
  CHECK_THROWS_AS(y_division(P("y^3", ring), P("2*y^2 - 1", ring), 1), std::invalid_argument);
}

TEST_CASE("exponent overflow is detected") {
  const Ring ring = Ring::ambient(1);
  const Poly big = Poly::variable(4, 0, 2000000000);
  CHECK_THROWS(big * big);
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(7);
  const Ring lr = Ring::ambient(2, true);
  for (int i = 0; i < 200; ++i) {
    const Poly a = testsupport::random_poly(rng, lr, 4, 4, 3, -2);
    const Poly b = testsupport::random_poly(rng, lr, 4, 4, 3, -2);
    const Poly c = testsupport::random_poly(rng, lr, 4, 4, 3, -2);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("parse o print is the identity on random polynomials") {
  std::mt19937_64 rng(11);
  const Ring lr = Ring::ambient(3, true);
  for (int i = 0; i < 1000; ++i) {
    const Poly p = testsupport::random_poly(rng, lr, lr.nvars(), 6, 4, -3);
    const std::string text = to_string(p, lr);
    REQUIRE(parse_poly(text, lr) == p);
    CHECK(to_string(parse_poly(text, lr), lr) == text);
  }
}

TEST_CASE("weight degree is a degree function; principal components multiply") {
  std::mt19937_64 rng(13);
  const Ring ring = Ring::ambient(2);
  const WeightVector w = WeightVector{{3, 7}, 5, std::nullopt}.bound({2, 1}, 2);
  for (int i = 0; i < 300; ++i) {
    const Poly a = testsupport::random_poly(rng, ring, 4, 4, 3);
    const Poly b = testsupport::random_poly(rng, ring, 4, 4, 3);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(weight_degree(a * b, w) == weight_degree(a, w) + weight_degree(b, w));
    CHECK(weight_degree(a + b, w) <= std::max(weight_degree(a, w), weight_degree(b, w)));
    CHECK(principal_component(a * b, w) == principal_component(a, w) * principal_component(b, w));
  }
}

TEST_CASE("substitution and derivatives") {
  const Ring lr = Ring::ambient(1, true);
  const Poly p = P("x1^2*z + y", lr);
  CHECK(p.substitute(2, P("x1^-2*(y^2 - 1)", lr)) == P("y^2 + y - 1", lr));
  CHECK(p.derivative(0) == P("2*x1*z", lr));
  CHECK(P("x1^-1", lr).derivative(0) == P("-x1^-2", lr));
  CHECK(P("(x1 + y)^3", lr).coefficient_in(1, 2) == P("3*x1", lr));
}
