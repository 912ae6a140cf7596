#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "paracontact/model.hpp"

using namespace paracontact;
using testing_support::chart;

TEST_CASE("hyperbolic half-space Christoffel symbols in closed form") {
  const ExpressionStructure s(chart("E1-3"));
  const std::vector<double> p = {0.3, -0.4, 1.3};
  const PointGeometry pg = analyze_point(s, p);
  const auto& G = pg.conn.gamma;
  const double y = p[2];
  CHECK(G(2, 0, 0).value() == doctest::Approx(1 / y).epsilon(1e-14));
  CHECK(G(0, 0, 2).value() == doctest::Approx(-1 / y).epsilon(1e-14));
  CHECK(G(0, 2, 0).value() == doctest::Approx(-1 / y).epsilon(1e-14));
  CHECK(G(2, 2, 2).value() == doctest::Approx(-1 / y).epsilon(1e-14));
  CHECK(std::abs(G(0, 1, 1).value()) < 1e-14);
}

TEST_CASE("hyperbolic space is Einstein with S = -2g") {
  const ExpressionStructure s(chart("E1-3"));
  const std::vector<double> p = {-1.1, 0.7, 0.8};
  const PointGeometry pg = analyze_point(s, p);
  CHECK(max_abs(pg.ricci + 2.0 * pg.tm.g) < 1e-12);
  CHECK(pg.curvature().scalar.value() == doctest::Approx(-6.0).epsilon(1e-12));
}

TEST_CASE("jet curvature agrees with the finite-difference oracle") {
  for (const char* name : {"E1-3", "E2-3", "E1-5"}) {
    CAPTURE(name);
    const ExpressionStructure s(chart(name));
    const auto pts = sample_points(s, 3, 11);
    for (const auto& p : pts) {
      const PointGeometry pg = analyze_point(s, p);
      const oracle::MetricFn g = testing_support::metric_fn(s);
      const auto fd_gamma = oracle::christoffel(g, p);
      const auto fd_r = oracle::riemann(g, p);
      const int n = s.dim();
      double gamma_gap = 0, r_gap = 0;
      for (int l = 0; l < n; ++l) {
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) {
            gamma_gap = std::max(gamma_gap,
                                 std::abs(pg.conn.gamma(l, i, j).value() - fd_gamma[l][i][j]));
            for (int k = 0; k < n; ++k) {
              r_gap = std::max(r_gap, std::abs(pg.riemann(l, i, j, k) - fd_r[l][i][j][k]));
            }
          }
        }
      }
      CHECK(gamma_gap < 1e-8);
      CHECK(r_gap < 1e-4);
      const double fd_scalar = oracle::scalar_curvature(g, p);
      CHECK(pg.curvature().scalar.value() == doctest::Approx(fd_scalar).epsilon(1e-4));
    }
  }
}

TEST_CASE("curvature invariants hold on every chart fixture") {
  for (const char* name : {"E1-3", "E2-3", "N1", "F0"}) {
    CAPTURE(name);
    const ExpressionStructure s(chart(name));
    const auto geoms = analyze_points(s, sample_points(s, 5, 3));
    const auto res = check_curvature_invariants(geoms, CheckOptions{});
    for (const auto& r : res.records) {
      CAPTURE(r.id);
      CHECK(r.status == CheckStatus::Pass);
    }
  }
}

TEST_CASE("Lie derivative routes agree") {
  const ExpressionStructure s(chart("E2-3"));
  const std::vector<double> p = {0.2, 0.1, 1.4};
  const PointGeometry pg = analyze_point(s, p);
  const TensorJet a = lie_derivative(pg.jets.g, pg.jets.xi, pg.conn, LieRoute::Partials);
  const TensorJet b = lie_derivative(pg.jets.g, pg.jets.xi, pg.conn, LieRoute::Covariant);
  CHECK(max_abs(values(a) - values(b)) < 1e-12);
}
