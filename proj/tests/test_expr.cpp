#include <string>
#include <vector>

#include "doctest.h"
#include "paracontact/expr.hpp"

using namespace paracontact;

namespace {
const std::vector<std::string> kCoords = {"x", "y", "z"};
}

TEST_CASE("precedence and unary minus") {
  const std::vector<double> p = {2.0, 3.0, 5.0};
  CHECK(parse_expr("x + y*z", kCoords).evaluate(p) == doctest::Approx(17.0));
  CHECK(parse_expr("-x^2", kCoords).evaluate(p) == doctest::Approx(-4.0));
  CHECK(parse_expr("(x+y)/z", kCoords).evaluate(p) == doctest::Approx(1.0));
  CHECK(parse_expr("y^-1", kCoords).evaluate(p) == doctest::Approx(1.0 / 3.0));
  CHECK(parse_expr("x - y - z", kCoords).evaluate(p) == doctest::Approx(-6.0));
}

TEST_CASE("to_string round trips") {
  const std::vector<double> p = {0.3, 1.7, 0.9};
  for (const char* src : {"1/(y*y)", "-x*sqrt(z)", "exp(-x)*cos(y) - ln(z)", "x^-2.5 + 3",
                          "-(x - y)", "0.1*y/z"}) {
    CAPTURE(src);
    const ScalarExpr e = parse_expr(src, kCoords);
    const ScalarExpr back = parse_expr(e.to_string(kCoords), kCoords);
    CHECK(back == e);
    CHECK(back.evaluate(p) == e.evaluate(p));
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_expr("x + w", kCoords);
    FAIL("expected an error");
  } catch (const UnknownIdentifierError& e) {
    CHECK(e.token() == "w");
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_expr("x +", kCoords), ParseError);
  CHECK_THROWS_AS(parse_expr("(x", kCoords), ParseError);
  CHECK_THROWS_AS(parse_expr("tan(x)", kCoords), ParseError);
  CHECK_THROWS_AS(parse_expr("x y", kCoords), ParseError);
  CHECK_THROWS_AS(parse_expr("", kCoords), ParseError);
}

TEST_CASE("max_coordinate tracks references") {
  CHECK(parse_expr("3", kCoords).max_coordinate() == -1);
  CHECK(parse_expr("x*z", kCoords).max_coordinate() == 2);
}
