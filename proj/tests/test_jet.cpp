#include <cmath>
#include <vector>

#include "doctest.h"
#include "paracontact/expr.hpp"
#include "paracontact/jet.hpp"

using namespace paracontact;

namespace {

double fd_second(double (*f)(double), double x, double h = 1e-4) {
  return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

TEST_CASE("reciprocal square has known Taylor coefficients") {
  const std::vector<std::string> coords = {"y"};
  const std::vector<double> p = {2.0};
  const Jet j = jet_eval(parse_expr("1/(y*y)", coords), p, 4);
  const int a0[] = {0}, a1[] = {1}, a2[] = {2};
  CHECK(j.coeff(a0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(j.coeff(a1) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(j.coeff(a2) == doctest::Approx(0.1875).epsilon(1e-15));
}

TEST_CASE("elementary functions agree with finite differences") {
  const std::vector<std::string> coords = {"x"};
  const double x0 = 0.7;
  const std::vector<double> p = {x0};
  struct Case {
    const char* src;
    double (*f)(double);
  };
  const Case cases[] = {
      {"exp(x)", [](double x) { return std::exp(x); }},
      {"ln(x)", [](double x) { return std::log(x); }},
      {"sqrt(x)", [](double x) { return std::sqrt(x); }},
      {"sin(x)*cos(x)", [](double x) { return std::sin(x) * std::cos(x); }},
      {"x^-1.5", [](double x) { return std::pow(x, -1.5); }},
  };
  for (const auto& c : cases) {
    CAPTURE(c.src);
    const Jet j = jet_eval(parse_expr(c.src, coords), p, 3);
    const int a2[] = {2};
    CHECK(j.value() == doctest::Approx(c.f(x0)).epsilon(1e-14));
    CHECK(j.derivative(a2) == doctest::Approx(fd_second(c.f, x0)).epsilon(1e-5));
  }
}

TEST_CASE("mixed partials are symmetric and match the product rule") {
  const std::vector<std::string> coords = {"x", "y"};
  const std::vector<double> p = {0.3, 1.2};
  const Jet j = jet_eval(parse_expr("x*x*y*y*y", coords), p, 4);
  const int a11[] = {1, 1}, a22[] = {2, 2};
  // d2/dxdy = 2x * 3y^2
  CHECK(j.derivative(a11) == doctest::Approx(2 * 0.3 * 3 * 1.2 * 1.2).epsilon(1e-13));
  // d4/dx2dy2 = 2 * 6y
  CHECK(j.derivative(a22) == doctest::Approx(2 * 6 * 1.2).epsilon(1e-13));
  const Jet dx = j.partial(0);
  CHECK(dx.order() == 3);
  const int a01[] = {0, 1};
  CHECK(dx.derivative(a01) == doctest::Approx(j.derivative(a11)).epsilon(1e-13));
}

TEST_CASE("quotient inverts product") {
  const std::vector<double> p = {0.4, -0.2};
  const auto x = coordinate_jets(p, 4);
  const Jet f = exp(x[0]) + x[1] * x[1] + 2.0;
  const Jet g = (f * reciprocal(f)) - 1.0;
  for (double c : g.coeffs()) CHECK(std::abs(c) < 1e-13);
}

TEST_CASE("domain violations are reported") {
  const std::vector<std::string> coords = {"x"};
  const std::vector<double> p = {-1.0};
  CHECK_THROWS_AS(jet_eval(parse_expr("ln(x)", coords), p, 2), DomainError);
  CHECK_THROWS_AS(jet_eval(parse_expr("sqrt(x)", coords), p, 2), DomainError);
  const std::vector<double> z = {0.0};
  CHECK_THROWS_AS(jet_eval(parse_expr("1/x", coords), z, 2), DomainError);
}

TEST_CASE("truncation keeps the lower-order prefix") {
  const std::vector<double> p = {0.5, 0.5, 0.5};
  const auto x = coordinate_jets(p, 4);
  const Jet f = sin(x[0] * x[1]) + cos(x[2]);
  const Jet t = f.truncated(2);
  CHECK(t.order() == 2);
  for (std::size_t i = 0; i < t.coeffs().size(); ++i) CHECK(t.coeffs()[i] == f.coeffs()[i]);
}
