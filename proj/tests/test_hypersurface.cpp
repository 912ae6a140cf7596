#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "paracontact/hypersurface.hpp"

using namespace paracontact;
using testing_support::bundle;

namespace {

Eigen::MatrixXd matrix(const TensorValue& t) {
  Eigen::MatrixXd m(t.dim(), t.dim());
  for (int i = 0; i < t.dim(); ++i) {
    for (int j = 0; j < t.dim(); ++j) m(i, j) = t(i, j);
  }
  return m;
}

std::vector<double> shifted(std::vector<double> x, int i, double h) {
  x[i] += h;
  return x;
}

}  // namespace

TEST_CASE("hyperplane is totally geodesic") {
  const InducedStructure s(bundle("E3a"));
  for (const auto& p : sample_points(s, 4, 1)) {
    const ShapeData sd = shape_operator(s, p);
    CHECK(max_abs(sd.A) < 1e-13);
    CHECK(sd.normal_sign == doctest::Approx(1.0));
  }
}

TEST_CASE("cone shape operator eigenvalues") {
  const InducedStructure s(bundle("E3b"));
  const ShapeData sd = shape_operator(s, std::vector<double>{1.0, 0.0, 0.0});
  Eigen::EigenSolver<Eigen::MatrixXd> es(matrix(sd.A));
  std::vector<double> ev;
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-12);
    ev.push_back(es.eigenvalues()(i).real());
  }
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-12));
  CHECK(std::abs(ev[1]) < 1e-12);
  CHECK(ev[2] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("shape operator matches a finite-difference Weingarten oracle") {
  // flat ambient: dN/du_i = -sum_j A(j, i) dF/du_j
  const InducedStructure s(bundle("E3b"));
  const double h = 1e-5;
  for (const auto& p : sample_points(s, 4, 2)) {
    const ShapeData sd = shape_operator(s, p);
    for (int i = 0; i < 3; ++i) {
      const auto np = shape_operator(s, shifted(p, i, h)).N;
      const auto nm = shape_operator(s, shifted(p, i, -h)).N;
      for (int a = 0; a < 4; ++a) {
        const double fd = (np[a] - nm[a]) / (2 * h);
        double w = 0.0;
        for (int j = 0; j < 3; ++j) w -= sd.A(j, i) * sd.tangent[j][a];
        CHECK(fd == doctest::Approx(w).epsilon(1e-7).scale(1.0));
      }
    }
  }
}

TEST_CASE("induced nabla xi matches a finite-difference oracle") {
  const InducedStructure s(bundle("E3b"));
  const double h = 1e-5;
  const oracle::MetricFn g = testing_support::metric_fn(s);
  for (const auto& p : sample_points(s, 3, 3)) {
    const PointGeometry pg = analyze_point(s, p, kDefaultJetOrder, false);
    const auto gamma = oracle::christoffel(g, p);
    for (int m = 0; m < 3; ++m) {
      const TensorValue xp = values(s.evaluate(shifted(p, m, h), 0).xi);
      const TensorValue xm = values(s.evaluate(shifted(p, m, -h), 0).xi);
      for (int i = 0; i < 3; ++i) {
        double v = (xp(i) - xm(i)) / (2 * h);
        for (int k = 0; k < 3; ++k) v += gamma[i][m][k] * pg.tm.xi(k);
        CHECK(pg.nabla_xi(i, m).value() == doctest::Approx(v).epsilon(1e-7).scale(1.0));
      }
    }
  }
}

TEST_CASE("induced derivatives and Gauss consistency on the fixtures") {
  for (const char* name : {"E3a", "E3b"}) {
    CAPTURE(name);
    const InducedStructure s(bundle(name));
    const auto pts = sample_points(s, 5, 4);
    const auto geoms = analyze_points(s, pts);
    const auto shapes = shape_operator(s, pts);
    const CheckOptions opt;
    CHECK(verify_induced_derivatives(geoms, shapes, opt).passed());
    CHECK(check_gauss_consistency(geoms, shapes, opt).passed());
    CHECK(check_shape_data(shapes, 1, opt).passed());
    CHECK(check_ambient(shapes, opt, 0.0).passed());
  }
}

TEST_CASE("a wrong epsilon is detected") {
  const InducedStructure s(bundle("E3b"));
  const auto pts = sample_points(s, 4, 5);
  auto geoms = analyze_points(s, pts, kDefaultJetOrder, false);
  auto shapes = shape_operator(s, pts);
  for (auto& pg : geoms) pg.tm.epsilon = -pg.tm.epsilon;
  for (auto& sd : shapes) sd.tm.epsilon = -sd.tm.epsilon;
  const auto res = verify_induced_derivatives(geoms, shapes, CheckOptions{});
  CHECK(res.at("induced.nabla_eta").status == CheckStatus::Fail);
  CHECK(check_shape_data(shape_operator(s, pts), -1, CheckOptions{})
            .at("induced.epsilon_consistent")
            .status == CheckStatus::Fail);
}

TEST_CASE("characterization agrees on both sides") {
  for (const char* name : {"E3a", "E3b"}) {
    CAPTURE(name);
    const InducedStructure s(bundle(name));
    const auto pts = sample_points(s, 5, 6);
    const auto geoms = analyze_points(s, pts, kDefaultJetOrder, false);
    const auto shapes = shape_operator(s, pts);
    const auto ch = check_ps_characterization(geoms, shapes, CheckOptions{});
    CHECK(ch.result.at("characterization.iff").status == CheckStatus::Pass);
    CHECK(ch.rho1.size() == pts.size());
  }
}

TEST_CASE("the para-Sasakian shape operator solves its own characterization") {
  const InducedStructure s(bundle("E3b"));
  const ShapeData sd = shape_operator(s, std::vector<double>{1.2, 0.3, -0.4});
  const TensorValue a = para_sasakian_shape(sd.tm);
  CHECK(shape_gap(sd.tm, a) < 1e-13);
  auto rng = make_rng(1, "test-inverse");
  const ConstructiveInverse inv = solve_shape_from_ps(sd.tm, rng);
  CHECK(inv.residual < 1e-9);
}

TEST_CASE("non-tangent JN is an input error") {
  const InducedStructure s(bundle("S3"));
  CHECK_THROWS_AS(s.evaluate(std::vector<double>{0.4, 0.0, 0.0}, 2), TangencyError);
}
