#include "paracontact/structure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace paracontact {

namespace {

using Vec = std::vector<double>;

Vec add(Vec a, std::span<const double> b, double s = 1.0) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

std::span<const double> comps(const TensorValue& t) { return t.data(); }

double vmax(std::span<const double> v) { return max_abs(v); }

// Worst normalized residual over points.
struct Worst {
  double value = 0.0;
  void add(double gap, double scale) { value = std::max(value, normalized(gap, scale)); }
};

void check_shape(const TensorJet& t, int n, Valence v, const char* what) {
  if (t.dim() != n || !(t.valence() == v)) {
    throw DimensionError(std::string("structure field '") + what + "' has the wrong shape");
  }
}

}  // namespace

TensorValue TangentModel::fundamental_form() const {
  TensorValue out(n, {0, 2}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += g(k, j) * phi(k, i);
      out(i, j) = s;
    }
  }
  return out;
}

double TangentModel::scale() const {
  return std::max({max_abs(g), max_abs(phi), max_abs(xi), max_abs(eta)});
}

const CurvatureAtPoint& PointGeometry::curvature() const {
  if (!curv) throw std::logic_error("point geometry was computed without curvature");
  return *curv;
}

PointGeometry analyze_point(const ParacontactStructure& s, std::span<const double> point,
                            int order, bool with_curvature) {
  const int n = s.dim();
  if (static_cast<int>(point.size()) != n) throw DimensionError("point has the wrong dimension");
  PointGeometry pg;
  pg.point.assign(point.begin(), point.end());
  pg.jets = s.evaluate(point, order);
  check_shape(pg.jets.g, n, {0, 2}, "g");
  check_shape(pg.jets.phi, n, {1, 1}, "phi");
  check_shape(pg.jets.xi, n, {1, 0}, "xi");
  check_shape(pg.jets.eta, n, {0, 1}, "eta");
  pg.conn = christoffel(pg.jets.g, point, s.declared_index());

  auto& tm = pg.tm;
  tm.n = n;
  tm.epsilon = pg.jets.epsilon;
  tm.g = values(pg.jets.g);
  tm.g_inv = pg.conn.metric_at.g_inv();
  tm.phi = values(pg.jets.phi);
  tm.xi = values(pg.jets.xi);
  tm.eta = values(pg.jets.eta);

  const Jet zero = pg.jets.g[0].constant(0.0);
  pg.Phi = TensorJet(n, {0, 2}, zero);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Jet acc = zero;
      for (int k = 0; k < n; ++k) acc += pg.jets.g(k, j) * pg.jets.phi(k, i);
      pg.Phi(i, j) = acc;
    }
  }
  pg.nabla_phi = covariant_derivative(pg.jets.phi, pg.conn);
  pg.nabla_xi = covariant_derivative(pg.jets.xi, pg.conn);
  pg.nabla_eta = covariant_derivative(pg.jets.eta, pg.conn);
  if (with_curvature) {
    pg.curv = curvature(pg.conn);
    pg.riemann = values(pg.curv->riemann_ud);
    pg.ricci = values(pg.curv->ricci);
  }
  return pg;
}

std::vector<std::vector<double>> sample_points(const ParacontactStructure& s, int count,
                                               std::uint64_t seed) {
  const auto& dom = s.domain();
  if (static_cast<int>(dom.size()) != s.dim()) throw DimensionError("domain has the wrong size");
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  auto rng = make_rng(seed, "points:" + s.name());
  for (int p = 0; p < count; ++p) {
    std::vector<double> x(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
      std::uniform_real_distribution<double> u(dom[i].lo, dom[i].hi);
      x[i] = dom[i].lo == dom[i].hi ? dom[i].lo : u(rng);
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

std::vector<PointGeometry> analyze_points(const ParacontactStructure& s,
                                          const std::vector<std::vector<double>>& points,
                                          int order, bool with_curvature) {
  std::vector<PointGeometry> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    try {
      out.push_back(analyze_point(s, p, order, with_curvature));
    } catch (const DomainError& e) {
      std::string where;
      for (double x : p) where += (where.empty() ? "" : ", ") + std::to_string(x);
      throw DomainError(std::string(e.what()) + " at point (" + where + ")");
    }
  }
  return out;
}

std::vector<double> apply_derivative11(const TensorValue& dt, std::span<const double> x,
                                       std::span<const double> y) {
  const int n = dt.dim();
  Vec out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) out[i] += dt(i, j, m) * y[j] * x[m];
    }
  }
  return out;
}

std::vector<double> apply_curvature(const TensorValue& r, std::span<const double> x,
                                    std::span<const double> y, std::span<const double> z) {
  const int n = r.dim();
  Vec out(n, 0.0);
  for (int l = 0; l < n; ++l) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double xy = x[i] * y[j];
        if (xy == 0.0) continue;
        for (int k = 0; k < n; ++k) s += r(l, i, j, k) * xy * z[k];
      }
    }
    out[l] = s;
  }
  return out;
}

StructureCheckResult check_axioms(std::span<const PointGeometry> pts, const CheckOptions& opt) {
  Worst phi2, etaxi, phixi, etaphi, compat, sym, gxi;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& tm = pts[p].tm;
    const int n = tm.n;
    const double eps = tm.epsilon;
    const double scale = tm.scale();
    auto rng = make_rng(opt.seed, "axioms", p);
    etaxi.add(pair(tm.eta, comps(tm.xi)) - 1.0, scale);
    phixi.add(vmax(act(tm.phi, comps(tm.xi))), scale);
    for (int v = 0; v < opt.vectors; ++v) {
      const Vec x = random_vector(rng, n);
      const Vec y = random_vector(rng, n);
      const Vec px = act(tm.phi, x);
      const Vec py = act(tm.phi, y);
      const double ex = pair(tm.eta, x);
      const double ey = pair(tm.eta, y);
      phi2.add(vmax(add(add(act(tm.phi, px), x, -1.0), comps(tm.xi), ex)), scale);
      etaphi.add(pair(tm.eta, px), scale);
      compat.add(bilinear(tm.g, px, py) - bilinear(tm.g, x, y) + eps * ex * ey, scale);
      sym.add(bilinear(tm.g, x, py) - bilinear(tm.g, px, y), scale);
      gxi.add(bilinear(tm.g, x, comps(tm.xi)) - eps * ex, scale);
    }
  }
  const double tol = opt.tol.algebraic;
  StructureCheckResult r;
  r.add(make_record("axioms.phi_squared", "structure axiom: phi^2 = I - eta(x)xi", phi2.value, tol));
  r.add(make_record("axioms.eta_xi", "structure axiom: eta(xi) = 1", etaxi.value, tol));
  r.add(make_record("axioms.phi_xi", "structure axiom: phi xi = 0", phixi.value, tol));
  r.add(make_record("axioms.eta_phi", "structure axiom: eta o phi = 0", etaphi.value, tol));
  r.add(make_record("axioms.metric_compat",
                    "metric axiom: g(phi X, phi Y) = g(X,Y) - eps eta(X)eta(Y)", compat.value,
                    tol));
  r.add(make_record("axioms.phi_symmetric", "metric axiom: g(X, phi Y) = g(phi X, Y)", sym.value,
                    tol));
  r.add(make_record("axioms.g_xi_eta", "metric axiom: g(X, xi) = eps eta(X)", gxi.value, tol));
  return r;
}

StructureCheckResult check_para_sasakian(std::span<const PointGeometry> pts,
                                         const CheckOptions& opt) {
  Worst dphi, dxi, phi_eta, phisym, dxiphi;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& pg = pts[p];
    const auto& tm = pg.tm;
    const int n = tm.n;
    const double eps = tm.epsilon;
    const TensorValue np = values(pg.nabla_phi);
    const TensorValue nx = values(pg.nabla_xi);
    const TensorValue ne = values(pg.nabla_eta);
    const TensorValue Phi = tm.fundamental_form();
    const double scale = std::max({tm.scale(), max_abs(np), max_abs(nx), max_abs(ne)});
    auto rng = make_rng(opt.seed, "sasakian", p);
    // (nabla_xi phi) X
    TensorValue along_xi(n, {1, 1}, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int m = 0; m < n; ++m) along_xi(i, j) += np(i, j, m) * tm.xi[m];
      }
    }
    for (int v = 0; v < opt.vectors; ++v) {
      const Vec x = random_vector(rng, n);
      const Vec y = random_vector(rng, n);
      const Vec px = act(tm.phi, x);
      const Vec py = act(tm.phi, y);
      const double ey = pair(tm.eta, y);
      // (nabla_X phi) Y + g(phi X, phi Y) xi + eps eta(Y) phi^2 X
      Vec gap = apply_derivative11(np, x, y);
      gap = add(gap, comps(tm.xi), bilinear(tm.g, px, py));
      gap = add(gap, act(tm.phi, px), eps * ey);
      dphi.add(vmax(gap), scale);
      const Vec nxx = act(nx, x);
      dxi.add(vmax(add(nxx, px, -eps)), scale);
      const double phixy = bilinear(Phi, x, y);
      const double nex = bilinear(ne, y, x);
      phi_eta.add(std::max(std::abs(phixy - nex), std::abs(phixy - eps * bilinear(tm.g, nxx, y))),
                  scale);
      phisym.add(phixy - bilinear(Phi, y, x), scale);
      dxiphi.add(vmax(act(along_xi, x)), scale);
    }
  }
  const double tol = opt.tol.first;
  StructureCheckResult r;
  r.add(make_record("sasakian.nabla_phi",
                    "para-Sasakian: (nabla_X phi)Y = -g(phi X, phi Y)xi - eps eta(Y) phi^2 X",
                    dphi.value, tol));
  r.add(make_record("sasakian.nabla_xi", "para-Sasakian: nabla xi = eps phi", dxi.value, tol));
  r.add(make_record("sasakian.Phi_nabla_eta",
                    "para-Sasakian: Phi(X,Y) = eps g(nabla_X xi, Y) = (nabla_X eta)Y",
                    phi_eta.value, tol));
  r.add(make_record("sasakian.Phi_symmetric", "para-Sasakian: Phi(X,Y) = Phi(Y,X)",
                    phisym.value, tol));
  r.add(make_record("sasakian.nabla_xi_phi", "para-Sasakian: nabla_xi phi = 0", dxiphi.value,
                    tol));
  return r;
}

StructureCheckResult check_ps_curvature_identities(std::span<const PointGeometry> pts,
                                                   const CheckOptions& opt,
                                                   bool para_sasakian) {
  Worst rxi, rphi, ssym, sxi;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& pg = pts[p];
    const auto& tm = pg.tm;
    const int n = tm.n;
    const double eps = tm.epsilon;
    const TensorValue& R = pg.riemann;
    const TensorValue& S = pg.ricci;
    pg.curvature();
    const TensorValue Phi = tm.fundamental_form();
    const double scale = std::max({tm.scale(), max_abs(R), max_abs(S)});
    auto rng = make_rng(opt.seed, "ps_curvature", p);
    for (int v = 0; v < opt.vectors; ++v) {
      const Vec x = random_vector(rng, n);
      const Vec y = random_vector(rng, n);
      const Vec z = random_vector(rng, n);
      const double ex = pair(tm.eta, x);
      const double ey = pair(tm.eta, y);
      const double ez = pair(tm.eta, z);
      const Vec px = act(tm.phi, x);
      const Vec py = act(tm.phi, y);
      const Vec pz = act(tm.phi, z);

      Vec gap = apply_curvature(R, x, y, comps(tm.xi));
      gap = add(add(gap, y, -ex), x, ey);
      rxi.add(vmax(gap), scale);

      const double phiyz = bilinear(Phi, y, z);
      const double phixz = bilinear(Phi, x, z);
      Vec rhs = act(tm.phi, apply_curvature(R, x, y, z));
      rhs = add(rhs, x, eps * phiyz);
      rhs = add(rhs, y, -eps * phixz);
      rhs = add(rhs, comps(tm.xi), -2.0 * eps * phiyz * ex + 2.0 * eps * phixz * ey);
      rhs = add(rhs, px, -eps * bilinear(tm.g, y, z) + 2.0 * ey * ez);
      rhs = add(rhs, py, eps * bilinear(tm.g, x, z) - 2.0 * ex * ez);
      rphi.add(vmax(add(apply_curvature(R, x, y, pz), rhs, -1.0)), scale);

      ssym.add(bilinear(S, x, py) - bilinear(S, px, y), scale);
      sxi.add(bilinear(S, x, comps(tm.xi)) + (n - 1) * ex, scale);
    }
  }
  const double tol = opt.tol.second;
  const std::string note = para_sasakian ? "" : "warning: structure is not para-Sasakian";
  StructureCheckResult r;
  r.add(make_record("ps_curvature.R_xi", "para-Sasakian curvature: R(X,Y)xi = eta(X)Y - eta(Y)X",
                    rxi.value, tol, note));
  r.add(make_record("ps_curvature.R_phi",
                    "para-Sasakian curvature: R(X,Y)phi Z = phi R(X,Y)Z + ... expansion",
                    rphi.value, tol, note));
  r.add(make_record("ps_curvature.S_phi_symmetric",
                    "para-Sasakian Ricci: S(X, phi Y) = S(phi X, Y)", ssym.value, tol, note));
  r.add(make_record("ps_curvature.S_xi", "para-Sasakian Ricci: S(X, xi) = -(n-1) eta(X)",
                    sxi.value, tol, note));
  return r;
}

StructureCheckResult check_curvature_invariants(std::span<const PointGeometry> pts,
                                                const CheckOptions& opt) {
  Worst gsym, metricity, ricsym, bianchi, antisym, pairsym, contracted;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& pg = pts[p];
    const auto& c = pg.curvature();
    const int n = pg.dim();
    const TensorValue G = values(pg.conn.gamma);
    const TensorValue Rd = values(c.riemann_dddd);
    const TensorValue& R = pg.riemann;
    const TensorValue& S = pg.ricci;
    const double scale = std::max({pg.tm.scale(), max_abs(G), max_abs(Rd), max_abs(S)});
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) gsym.add(G(k, i, j) - G(k, j, i), scale);
      }
    }
    metricity.add(max_abs(values(covariant_derivative(pg.jets.g, pg.conn))), scale);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        ricsym.add(S(i, j) - S(j, i), scale);
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l) {
            const double v = Rd(i, j, k, l);
            antisym.add(std::max(std::abs(v + Rd(j, i, k, l)), std::abs(v + Rd(i, j, l, k))),
                        scale);
            pairsym.add(v - Rd(k, l, i, j), scale);
          }
        }
      }
    }
    auto rng = make_rng(opt.seed, "curvature", p);
    for (int v = 0; v < opt.vectors; ++v) {
      const Vec x = random_vector(rng, n);
      const Vec y = random_vector(rng, n);
      const Vec z = random_vector(rng, n);
      Vec sum = apply_curvature(R, x, y, z);
      sum = add(sum, apply_curvature(R, y, z, x));
      sum = add(sum, apply_curvature(R, z, x, y));
      bianchi.add(vmax(sum), scale);
      contracted.add(pair(c.dr, x) - 2.0 * pair(c.div_q, x),
                     std::max(scale, max_abs(c.dr)));
    }
  }
  StructureCheckResult r;
  const auto& t = opt.tol;
  r.add(make_record("curvature.christoffel_symmetric", "Levi-Civita: Gamma^k_ij = Gamma^k_ji",
                    gsym.value, t.algebraic));
  r.add(make_record("curvature.metricity", "Levi-Civita: nabla g = 0", metricity.value,
                    t.algebraic));
  r.add(make_record("curvature.ricci_symmetric", "Ricci tensor symmetric", ricsym.value,
                    t.algebraic));
  r.add(make_record("curvature.bianchi_first", "first Bianchi identity", bianchi.value, t.first));
  r.add(make_record("curvature.antisymmetry", "R_ijkl = -R_jikl = -R_ijlk", antisym.value,
                    t.algebraic));
  r.add(make_record("curvature.pair_symmetry", "R_ijkl = R_klij", pairsym.value, t.algebraic));
  r.add(make_record("curvature.contracted_bianchi", "contracted Bianchi: Xr = 2 (div Q) X",
                    contracted.value, t.second));
  return r;
}

}  // namespace paracontact
