#include <random>
#include <vector>

#include "doctest.h"
#include "paracontact/checks.hpp"
#include "paracontact/metric.hpp"
#include "paracontact/tensor.hpp"

using namespace paracontact;

namespace {

TensorValue diag(std::vector<double> d) {
  const int n = static_cast<int>(d.size());
  TensorValue g(n, {0, 2}, 0.0);
  for (int i = 0; i < n; ++i) g(i, i) = d[i];
  return g;
}

TensorValue random_tensor(std::mt19937_64& rng, int n, Valence v) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TensorValue t(n, v, 0.0);
  for (auto& x : t.data()) x = u(rng);
  return t;
}

}  // namespace

TEST_CASE("contraction of an outer product is a pairing") {
  auto rng = make_rng(7, "tensor-test");
  const TensorValue v = random_tensor(rng, 4, {1, 0});
  const TensorValue w = random_tensor(rng, 4, {0, 1});
  const TensorValue vw = tensor_product(v, w);
  CHECK(vw.valence() == Valence{1, 1});
  const double tr = scalar(contract(vw, 0, 0));
  CHECK(tr == doctest::Approx(pair(w, std::vector<double>(v.data().begin(), v.data().end()))));
}

TEST_CASE("raising then lowering is the identity") {
  auto rng = make_rng(7, "tensor-test", 1);
  const MetricAtPoint m = MetricAtPoint::from(diag({2.0, -0.5, 3.0}));
  const TensorValue t = random_tensor(rng, 3, {0, 2});
  const TensorValue raised = metric_convert(t, 0, IndexMove::Raise, m.g_inv());
  CHECK(raised.valence() == Valence{1, 1});
  const TensorValue back = metric_convert(raised, 0, IndexMove::Lower, m.g());
  CHECK(max_abs(back - t) < 1e-14);
}

TEST_CASE("slot errors") {
  const TensorValue v(3, {1, 0}, 1.0);
  CHECK_THROWS_AS(contract(v, 0, 0), SlotError);
  const TensorValue t(3, {1, 1}, 1.0);
  CHECK_THROWS_AS(swap_slots(t, 0, 1), SlotError);
  CHECK_THROWS_AS(t + TensorValue(4, {1, 1}, 0.0), DimensionError);
}

TEST_CASE("metric inertia and validation") {
  CHECK(MetricAtPoint::from(diag({1, 1, 1})).index() == 0);
  CHECK(MetricAtPoint::from(diag({1, -1, -1})).index() == 2);
  CHECK(MetricAtPoint::from(diag({-2, 1, 4})).det() == doctest::Approx(-8.0));
  CHECK_THROWS_AS(MetricAtPoint::from(diag({1, 0, 1})), DegenerateMetricError);
  CHECK_THROWS_AS(MetricAtPoint::from(diag({1, -1, 1}), 0), SignatureError);
  TensorValue asym = diag({1, 1, 1});
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(MetricAtPoint::from(asym), DegenerateMetricError);
}

TEST_CASE("signed Gram-Schmidt produces an adapted frame") {
  TensorValue g = diag({1, -1, 2});
  g(0, 2) = g(2, 0) = 0.3;
  const MetricAtPoint m = MetricAtPoint::from(g);
  std::vector<int> signs;
  const auto e = orthonormalize(m, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, signs);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(m.inner(e[i], e[j]) == doctest::Approx(i == j ? signs[i] : 0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("normalized residual and number formatting") {
  CHECK(normalized(2.0, 1.0) == doctest::Approx(1.0));
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-12) == "1e-12");
}

TEST_CASE("rng streams are reproducible and independent") {
  auto a = make_rng(42, "points");
  auto b = make_rng(42, "points");
  auto c = make_rng(42, "vectors");
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
}
