#include "paracontact/models.hpp"

#include <string>

namespace paracontact {

namespace {

std::vector<ScalarExpr> parse_all(const std::vector<std::string>& src,
                                  const std::vector<std::string>& coords) {
  std::vector<ScalarExpr> out;
  out.reserve(src.size());
  for (const auto& s : src) out.push_back(parse_expr(s, coords));
  return out;
}

std::vector<std::string> diagonal(const std::vector<std::string>& d) {
  const std::size_t n = d.size();
  std::vector<std::string> out(n * n, "0");
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = d[i];
  return out;
}

ManifoldModel scaled_phi(ManifoldModel m, double factor) {
  for (auto& e : m.phi) {
    if (e.op() == ScalarExpr::Op::Constant) {
      e = ScalarExpr(factor * e.number());
    } else {
      e = ScalarExpr(factor) * e;
    }
  }
  return m;
}

ManifoldModel flat_formal() {
  ManifoldModel m;
  m.name = "F0";
  m.description = "flat R^3 with a formal structure phi = diag(1, -1, 0), xi = d/dz (not para-Sasakian)";
  m.dim = 3;
  m.coords = {"x", "y", "z"};
  m.epsilon = 1;
  m.index = 0;
  m.metric = parse_all(diagonal({"1", "1", "1"}), m.coords);
  m.phi = parse_all(diagonal({"1", "-1", "0"}), m.coords);
  m.xi = parse_all({"0", "0", "1"}, m.coords);
  m.eta = parse_all({"0", "0", "1"}, m.coords);
  m.domain = {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
  return m;
}

AmbientProductModel flat_product() {
  AmbientProductModel a;
  a.name = "flat R^2 x R^2";
  a.dim = 4;
  a.coords = {"x1", "x2", "y1", "y2"};
  a.metric = parse_all(diagonal({"1", "1", "1", "1"}), a.coords);
  a.J = parse_all(diagonal({"1", "1", "-1", "-1"}), a.coords);
  a.k = 0.0;
  return a;
}

HypersurfaceBundle hyperplane() {
  HypersurfaceBundle b;
  b.name = "E3a";
  b.description = "hyperplane x1 + y1 = 0 in flat R^2 x R^2, unit normal (1, 0, 1, 0)/sqrt(2)";
  b.ambient = flat_product();
  b.embedding.coords = {"s1", "s2", "s3"};
  b.embedding.map = parse_all({"s1*sqrt(0.5)", "s2", "-s1*sqrt(0.5)", "s3"}, b.embedding.coords);
  b.embedding.domain = {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}};
  b.index = 0;
  b.epsilon = 1;
  return b;
}

HypersurfaceBundle cone(int declared_epsilon) {
  HypersurfaceBundle b;
  b.name = declared_epsilon == 1 ? "E3b" : "E3b-flip";
  b.description = declared_epsilon == 1
                      ? "cone |x| = |y| in flat R^2 x R^2, chart (t cos a, t sin a, t cos b, t sin b)"
                      : "the E3b cone with the wrong declared eps = -1 (negative control)";
  b.ambient = flat_product();
  b.embedding.coords = {"t", "a", "b"};
  b.embedding.map =
      parse_all({"t*cos(a)", "t*sin(a)", "t*cos(b)", "t*sin(b)"}, b.embedding.coords);
  b.embedding.domain = {{0.5, 2.0}, {-1.0, 1.0}, {-1.0, 1.0}};
  b.index = 0;
  b.epsilon = declared_epsilon;
  return b;
}

HypersurfaceBundle sphere_patch() {
  HypersurfaceBundle b;
  b.name = "S3";
  b.description = "patch of the unit sphere in flat R^2 x R^2 where JN is not tangent (input error)";
  b.ambient = flat_product();
  b.embedding.coords = {"th", "a", "b"};
  b.embedding.map = parse_all(
      {"cos(th)*cos(a)", "cos(th)*sin(a)", "sin(th)*cos(b)", "sin(th)*sin(b)"},
      b.embedding.coords);
  b.embedding.domain = {{0.2, 0.6}, {-1.0, 1.0}, {-1.0, 1.0}};
  b.index = 0;
  b.epsilon = 1;
  return b;
}

}  // namespace

ManifoldModel upper_half_space(int n, int sign) {
  ManifoldModel m;
  const bool plus = sign > 0;
  m.name = std::string(plus ? "E1-" : "E2-") + std::to_string(n);
  m.description = plus ? "hyperbolic upper half-space, para-Sasakian with eps = +1"
                       : "Lorentzian upper half-space, para-Sasakian with eps = -1";
  m.dim = n;
  for (int i = 1; i < n; ++i) m.coords.push_back("x" + std::to_string(i));
  m.coords.push_back("y");
  m.epsilon = plus ? 1 : -1;
  m.index = plus ? 0 : 1;
  std::vector<std::string> g(n, "1/(y*y)"), phi(n, plus ? "-1" : "1"), xi(n, "0"), eta(n, "0");
  g[n - 1] = plus ? "1/(y*y)" : "-1/(y*y)";
  phi[n - 1] = "0";
  xi[n - 1] = "y";
  eta[n - 1] = "1/y";
  m.metric = parse_all(diagonal(g), m.coords);
  m.phi = parse_all(diagonal(phi), m.coords);
  m.xi = parse_all(xi, m.coords);
  m.eta = parse_all(eta, m.coords);
  m.domain.assign(n - 1, Interval{-2.0, 2.0});
  m.domain.push_back({0.5, 2.0});
  return m;
}

std::vector<Fixture> builtin_models() {
  std::vector<Fixture> out;
  for (int sign : {1, -1}) {
    for (int n : {3, 5}) {
      ManifoldModel m = upper_half_space(n, sign);
      out.push_back({m.name, m.description, m, false});
    }
  }
  ManifoldModel n1 = scaled_phi(upper_half_space(3, 1), 1.01);
  n1.name = "N1";
  n1.description = "E1-3 with phi scaled by 1.01 (negative control)";
  out.push_back({n1.name, n1.description, n1, true});
  ManifoldModel f0 = flat_formal();
  out.push_back({f0.name, f0.description, f0, true});
  for (HypersurfaceBundle b : {hyperplane(), cone(1), cone(-1), sphere_patch()}) {
    const bool negative = b.name != "E3a" && b.name != "E3b";
    out.push_back({b.name, b.description, b, negative});
  }
  return out;
}

std::optional<Fixture> find_builtin(std::string_view name) {
  std::string key(name);
  if (key == "E1") key = "E1-3";
  if (key == "E2") key = "E2-3";
  for (auto& f : builtin_models()) {
    if (f.name == key) return f;
  }
  return std::nullopt;
}

}  // namespace paracontact
