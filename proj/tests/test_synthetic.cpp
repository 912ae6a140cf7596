#include <cmath>

#include "doctest.h"
#include "paracontact/synthetic.hpp"

using namespace paracontact;

TEST_CASE("random tangent models satisfy the structure axioms") {
  for (int eps : {1, -1}) {
    for (int n : {3, 5, 7}) {
      CAPTURE(eps);
      CAPTURE(n);
      auto rng = make_rng(3, "test-tangent", n);
      const TangentModel tm = random_tangent_model(rng, n, eps).tm;
      const TensorValue phi2 = compose11(tm.phi, tm.phi);
      const TensorValue target = identity(n) - tensor_product(tm.xi, tm.eta);
      CHECK(max_abs(phi2 - target) < 1e-12);
      CHECK(pair(tm.eta, std::vector<double>(tm.xi.data().begin(), tm.xi.data().end())) ==
            doctest::Approx(1.0));
      const auto xi = std::vector<double>(tm.xi.data().begin(), tm.xi.data().end());
      CHECK(bilinear(tm.g, xi, xi) == doctest::Approx(eps));
    }
  }
}

TEST_CASE("planted shape operator and derived Gauss constant") {
  for (int eps : {1, -1}) {
    for (int n : {3, 5}) {
      CAPTURE(eps);
      CAPTURE(n);
      SyntheticOptions o;
      o.epsilon = eps;
      o.n = n;
      o.trials = 10;
      const SyntheticGaussResult r = synthetic_gauss_check(o);
      CHECK(r.result.at("characterization.planted").residual < 1e-12);
      CHECK(r.result.at("gauss.derived_display").status == CheckStatus::Pass);
      CHECK(r.result.at("gauss.ricci_derived").status == CheckStatus::Pass);
      CHECK(r.result.at("gauss.eps_a_plus_c").status == CheckStatus::Pass);
      CHECK(r.result.at("hypersurface.quasi_umbilical").status == CheckStatus::Pass);
      for (double k : r.k_recovered) CHECK(k == doctest::Approx(-eps).epsilon(1e-9));
      for (double k : r.k_printed_display) CHECK(k == doctest::Approx(2 - eps).epsilon(1e-9));
      CHECK(r.result.at("gauss.k_printed").status == CheckStatus::PrintedFormMismatch);
      CHECK(r.result.at("gauss.ricci_printed").status == CheckStatus::PrintedFormMismatch);
      CHECK(r.result.at("gauss.ricci_printed_internal").status == CheckStatus::Pass);
      CHECK(r.result.passed());
    }
  }
}

TEST_CASE("perturbing the planted shape operator is detected") {
  SyntheticOptions o;
  o.trials = 5;
  o.perturb_a = 0.1;
  const SyntheticGaussResult r = synthetic_gauss_check(o);
  CHECK(r.result.at("characterization.planted").status == CheckStatus::Fail);
  CHECK(r.result.at("hypersurface.quasi_umbilical").status == CheckStatus::Fail);
}

TEST_CASE("synthetic runs are reproducible") {
  SyntheticOptions o;
  o.trials = 4;
  const auto a = synthetic_gauss_check(o);
  const auto b = synthetic_gauss_check(o);
  CHECK(a.k_recovered == b.k_recovered);
  CHECK(a.quasi_umbilical_gap == b.quasi_umbilical_gap);
}
