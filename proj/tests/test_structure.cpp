#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "paracontact/model.hpp"

using namespace paracontact;
using testing_support::chart;

namespace {

StructureCheckResult run(const char* name, bool sasakian) {
  const ExpressionStructure s(chart(name));
  const auto geoms = analyze_points(s, sample_points(s, 8, 42));
  StructureCheckResult out = check_axioms(geoms, CheckOptions{});
  if (sasakian) out.append(check_para_sasakian(geoms, CheckOptions{}));
  return out;
}

}  // namespace

TEST_CASE("upper half-space models are para-Sasakian") {
  for (const char* name : {"E1-3", "E2-3", "E1-5", "E2-5"}) {
    CAPTURE(name);
    const auto res = run(name, true);
    for (const auto& r : res.records) {
      CAPTURE(r.id);
      CHECK(r.status == CheckStatus::Pass);
      CHECK(r.residual < 1e-12);
    }
  }
}

TEST_CASE("scaled phi breaks phi squared by the expected amount") {
  const auto res = run("N1", true);
  const CheckRecord& r = res.at("axioms.phi_squared");
  CHECK(r.status == CheckStatus::Fail);
  // raw gap 1.01^2 - 1 = 0.0201 on the phi block, normalized by 1 + scale
  CHECK(r.residual > 0.009);
  CHECK(r.residual < 0.0101);
  CHECK_FALSE(res.passed());
}

TEST_CASE("flat formal structure fails the para-Sasakian identities") {
  const ExpressionStructure s(chart("F0"));
  const auto geoms = analyze_points(s, sample_points(s, 4, 42));
  CHECK(check_axioms(geoms, CheckOptions{}).passed());
  const auto ps = check_para_sasakian(geoms, CheckOptions{});
  CHECK_FALSE(ps.passed());
  const auto curv = check_ps_curvature_identities(geoms, CheckOptions{}, false);
  CHECK(curv.at("ps_curvature.R_xi").status == CheckStatus::Fail);
  CHECK(curv.at("ps_curvature.S_xi").status == CheckStatus::Fail);
}

TEST_CASE("para-Sasakian curvature identities hold on the half-space models") {
  for (const char* name : {"E1-3", "E2-3"}) {
    CAPTURE(name);
    const ExpressionStructure s(chart(name));
    const auto geoms = analyze_points(s, sample_points(s, 6, 5));
    const auto res = check_ps_curvature_identities(geoms, CheckOptions{});
    CHECK(res.passed());
  }
}

TEST_CASE("nabla xi equals eps phi on E2") {
  const ExpressionStructure s(chart("E2-3"));
  const PointGeometry pg = analyze_point(s, std::vector<double>{0.5, -0.5, 1.5}, 4, false);
  const TensorValue nx = values(pg.nabla_xi);
  CHECK(max_abs(nx + pg.tm.phi) < 1e-13);  // eps = -1
}

TEST_CASE("sample points are reproducible and inside the domain") {
  const ExpressionStructure s(chart("E1-3"));
  const auto a = sample_points(s, 10, 9);
  CHECK(a == sample_points(s, 10, 9));
  CHECK(a != sample_points(s, 10, 10));
  for (const auto& p : a) {
    for (int i = 0; i < 3; ++i) {
      CHECK(p[i] >= s.domain()[i].lo);
      CHECK(p[i] <= s.domain()[i].hi);
    }
  }
}
