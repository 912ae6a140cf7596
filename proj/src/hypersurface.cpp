#include "paracontact/hypersurface.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "paracontact/geometry.hpp"
#include "paracontact/metric.hpp"
#include "paracontact/model.hpp"

namespace paracontact {

namespace {

using Vec = std::vector<double>;

struct Worst {
  double value = 0.0;
  void add(double gap, double scale) { value = std::max(value, normalized(gap, scale)); }
};

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

std::string point_text(std::span<const double> p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + format_number(p[i]);
  return s + ")";
}

// Laplace expansion along rows; rows[r][c] with the given column subset.
Jet minor_det(const std::vector<std::vector<Jet>>& rows, std::vector<int>& cols, std::size_t r) {
  if (cols.size() == 1) return rows[r][cols[0]];
  Jet acc = rows[r][cols[0]].constant(0.0);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const int col = cols[c];
    if (rows[r][col].value() == 0.0 && max_abs(rows[r][col].coeffs()) == 0.0) continue;
    std::vector<int> rest;
    rest.reserve(cols.size() - 1);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (k != c) rest.push_back(cols[k]);
    }
    const Jet term = rows[r][col] * minor_det(rows, rest, r + 1);
    if (c % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

Jet inner(const TensorJet& G, std::span<const Jet> u, std::span<const Jet> v) {
  const int m = G.dim();
  Jet acc = G[0].constant(0.0);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) acc += G(a, b) * u[a] * v[b];
  }
  return acc;
}

std::vector<Jet> act_jet(const TensorJet& J, std::span<const Jet> v) {
  const int m = J.dim();
  std::vector<Jet> out(m, J[0].constant(0.0));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) out[a] += J(a, b) * v[b];
  }
  return out;
}

// g(AX, Y) as a (0,2) array: ga(i, k) = sum_m A^m_i g_mk
TensorValue lower_shape(const TangentModel& tm, const TensorValue& A) {
  const int n = tm.n;
  TensorValue out(n, {0, 2}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int m = 0; m < n; ++m) s += A(m, i) * tm.g(m, k);
      out(i, k) = s;
    }
  }
  return out;
}

}  // namespace

void AmbientProductModel::validate_shape() const {
  const auto m = static_cast<std::size_t>(dim);
  require(dim >= 2, "ambient dim must be at least 2");
  require(coords.size() == m, "ambient coords must list " + std::to_string(dim) + " names");
  require(metric.size() == m * m, "ambient metric must have dim*dim entries");
  require(J.size() == m * m, "ambient J must have dim*dim entries");
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      require(metric[i * m + j] == metric[j * m + i],
              "ambient metric is not symmetric as written at (" + coords[i] + ", " + coords[j] +
                  ")");
    }
  }
}

TensorJet AmbientProductModel::metric_jets(std::span<const Jet> args) const {
  return expression_tensor(metric, dim, {0, 2}, args);
}

TensorJet AmbientProductModel::J_jets(std::span<const Jet> args) const {
  return expression_tensor(J, dim, {1, 1}, args);
}

void HypersurfaceBundle::validate_shape() const {
  ambient.validate_shape();
  const auto n = embedding.coords.size();
  require(n >= 1, "embedding needs chart coordinates");
  require(static_cast<int>(n) + 1 == ambient.dim, "ambient dim must be chart dim + 1");
  require(embedding.map.size() == n + 1, "embedding map must have dim + 1 components");
  require(embedding.domain.size() == n, "embedding domain must have dim intervals");
  for (std::size_t i = 0; i < n; ++i) {
    require(embedding.domain[i].lo <= embedding.domain[i].hi,
            "domain interval for '" + embedding.coords[i] + "' is empty");
  }
  require(embedding.orientation == 1 || embedding.orientation == -1,
          "orientation must be +1 or -1");
  require(!epsilon || *epsilon == 1 || *epsilon == -1, "epsilon must be +1 or -1");
}

TangencyError::TangencyError(std::vector<double> point, double measured)
    : std::runtime_error("JN not tangent at " + point_text(point) +
                         ": g(JN, N) = " + format_number(measured)),
      point_(std::move(point)),
      measured_(measured) {}

InducedStructure::InducedStructure(HypersurfaceBundle bundle) : bundle_(std::move(bundle)) {
  bundle_.validate_shape();
  if (bundle_.epsilon) {
    epsilon_ = *bundle_.epsilon;
  } else {
    std::vector<double> center;
    for (const auto& iv : bundle_.embedding.domain) center.push_back(0.5 * (iv.lo + iv.hi));
    epsilon_ = frame(center, 1).normal_sign > 0 ? 1 : -1;
  }
}

InducedFrame InducedStructure::frame(std::span<const double> point, int order) const {
  const int n = dim();
  const int m = n + 1;
  if (static_cast<int>(point.size()) != n) throw DimensionError("point has the wrong dimension");
  const auto args = coordinate_jets(point, order + 1);
  InducedFrame fr;
  for (const auto& e : bundle_.embedding.map) fr.position.push_back(e.compose(args));
  fr.tangent.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < m; ++a) fr.tangent[i].push_back(fr.position[a].partial(i));
  }
  fr.ambient_g = bundle_.ambient.metric_jets(fr.position);
  fr.ambient_J = bundle_.ambient.J_jets(fr.position);

  // Cofactor covector: n_a = (-1)^a det(tangent without column a).
  std::vector<Jet> cov;
  for (int a = 0; a < m; ++a) {
    std::vector<int> cols;
    for (int b = 0; b < m; ++b) {
      if (b != a) cols.push_back(b);
    }
    Jet d = minor_det(fr.tangent, cols, 0);
    cov.push_back(a % 2 == 0 ? d : -d);
  }
  const TensorJet ginv = inverse_metric(fr.ambient_g);
  std::vector<Jet> raw(m, cov[0].constant(0.0));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) raw[a] += ginv(a, b) * cov[b];
  }
  Jet q = cov[0].constant(0.0);
  double mag = 0.0;
  for (int a = 0; a < m; ++a) {
    q += cov[a] * raw[a];
    mag += std::abs(cov[a].value() * raw[a].value());
  }
  if (mag == 0.0) {
    throw DomainError("embedding differential has rank < " + std::to_string(n) + " at " +
                      point_text(point));
  }
  if (std::abs(q.value()) < kLightlikeThreshold * mag) {
    throw LightlikeNormalError("lightlike normal direction at " + point_text(point) +
                               " is unsupported");
  }
  fr.normal_sign = q.value() > 0.0 ? 1.0 : -1.0;
  Jet inv_len = reciprocal(sqrt(q * fr.normal_sign));
  double biggest = 0.0;
  for (const auto& r : raw) biggest = std::max(biggest, std::abs(r.value()));
  for (const auto& r : raw) {
    if (std::abs(r.value()) > 1e-12 * biggest) {
      if (r.value() < 0.0) inv_len = -inv_len;
      break;
    }
  }
  inv_len *= static_cast<double>(bundle_.embedding.orientation);
  for (int a = 0; a < m; ++a) fr.normal.push_back(raw[a] * inv_len);
  fr.tangency = std::abs(inner(fr.ambient_g, act_jet(fr.ambient_J, fr.normal), fr.normal).value());
  return fr;
}

StructureJets InducedStructure::evaluate(std::span<const double> point, int order) const {
  const int n = dim();
  const InducedFrame fr = frame(point, order);
  if (fr.tangency > kTangencyTolerance) {
    throw TangencyError(std::vector<double>(point.begin(), point.end()), fr.tangency);
  }
  const Jet zero = fr.normal[0].constant(0.0);
  StructureJets s;
  s.epsilon = epsilon_;
  s.g = TensorJet(n, {0, 2}, zero);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Jet v = inner(fr.ambient_g, fr.tangent[i], fr.tangent[j]);
      s.g(i, j) = v;
      s.g(j, i) = v;
    }
  }
  const TensorJet ginv = inverse_metric(s.g);
  const auto jn = act_jet(fr.ambient_J, fr.normal);
  std::vector<Jet> jn_t(n, zero);  // g(JN, E_j)
  for (int j = 0; j < n; ++j) jn_t[j] = inner(fr.ambient_g, jn, fr.tangent[j]);
  s.xi = TensorJet(n, {1, 0}, zero);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s.xi[i] += ginv(i, j) * jn_t[j];
  }
  s.eta = TensorJet(n, {0, 1}, zero);
  s.phi = TensorJet(n, {1, 1}, zero);
  for (int i = 0; i < n; ++i) {
    const auto je = act_jet(fr.ambient_J, fr.tangent[i]);
    s.eta[i] = inner(fr.ambient_g, je, fr.normal) * static_cast<double>(epsilon_);
    std::vector<Jet> jt(n, zero);
    for (int k = 0; k < n; ++k) jt[k] = inner(fr.ambient_g, je, fr.tangent[k]);
    for (int j = 0; j < n; ++j) {
      Jet acc = zero;
      for (int k = 0; k < n; ++k) acc += ginv(j, k) * jt[k];
      s.phi(j, i) = acc;
    }
  }
  return s;
}

ShapeData shape_operator(const InducedStructure& s, std::span<const double> point) {
  const int n = s.dim();
  const int m = n + 1;
  const InducedFrame fr = s.frame(point, 2);
  if (fr.tangency > kTangencyTolerance) {
    throw TangencyError(std::vector<double>(point.begin(), point.end()), fr.tangency);
  }
  const StructureJets sj = s.evaluate(point, 1);
  ShapeData sd;
  sd.point.assign(point.begin(), point.end());
  sd.tm.n = n;
  sd.tm.epsilon = sj.epsilon;
  sd.tm.g = values(sj.g);
  sd.tm.g_inv = MetricAtPoint::from(sd.tm.g, s.declared_index()).g_inv();
  sd.tm.phi = values(sj.phi);
  sd.tm.xi = values(sj.xi);
  sd.tm.eta = values(sj.eta);
  sd.normal_sign = fr.normal_sign;
  sd.tangency = fr.tangency;
  for (const auto& c : fr.normal) sd.N.push_back(c.value());
  sd.tangent.assign(n, Vec(m));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < m; ++a) sd.tangent[i][a] = fr.tangent[i][a].value();
  }

  Vec amb(m);
  for (int a = 0; a < m; ++a) amb[a] = fr.position[a].value();
  const auto ambient_args = coordinate_jets(amb, 3);
  const auto& ambient = s.bundle().ambient;
  const ConnectionAtPoint aconn = christoffel(ambient.metric_jets(ambient_args), amb);
  const CurvatureAtPoint acurv = curvature(aconn);
  const TensorValue G = values(aconn.metric);
  const TensorValue Gamma = values(aconn.gamma);
  const TensorJet Jj = ambient.J_jets(ambient_args);
  sd.ambient_g = G;
  sd.ambient_J = values(Jj);
  sd.ambient_nabla_J = values(covariant_derivative(Jj, aconn));
  sd.ambient_riemann = values(acurv.riemann_dddd);

  // Ambient covariant derivative of N along E_i, and of E_j along E_i.
  std::vector<Vec> dN(n, Vec(m, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < m; ++a) {
      double v = fr.normal[a].partial(i).value();
      for (int b = 0; b < m; ++b) {
        for (int c = 0; c < m; ++c) v += Gamma(a, b, c) * sd.tangent[i][b] * sd.N[c];
      }
      dN[i][a] = v;
    }
  }
  sd.A = TensorValue(n, {1, 1}, 0.0);
  for (int i = 0; i < n; ++i) {
    Vec proj(n);
    for (int k = 0; k < n; ++k) proj[k] = -bilinear(G, dN[i], sd.tangent[k]);
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) v += sd.tm.g_inv(j, k) * proj[k];
      sd.A(j, i) = v;
    }
  }
  sd.h = TensorValue(n, {0, 2}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vec dd(m);
      for (int a = 0; a < m; ++a) {
        double v = fr.tangent[j][a].partial(i).value();
        for (int b = 0; b < m; ++b) {
          for (int c = 0; c < m; ++c) v += Gamma(a, b, c) * sd.tangent[i][b] * sd.tangent[j][c];
        }
        dd[a] = v;
      }
      sd.h(i, j) = sd.normal_sign * bilinear(G, dd, sd.N);
    }
  }
  return sd;
}

std::vector<ShapeData> shape_operator(const InducedStructure& s,
                                      const std::vector<std::vector<double>>& points) {
  std::vector<ShapeData> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(shape_operator(s, p));
  return out;
}

TensorValue almost_constant_curvature(const TensorValue& g, const TensorValue& J, double k) {
  const int m = g.dim();
  TensorValue jg(m, {0, 2}, 0.0);  // jg(x, z) = g(J d_x, d_z)
  for (int x = 0; x < m; ++x) {
    for (int z = 0; z < m; ++z) {
      double s = 0.0;
      for (int a = 0; a < m; ++a) s += J(a, x) * g(a, z);
      jg(x, z) = s;
    }
  }
  TensorValue r(m, {0, 4}, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int p = 0; p < m; ++p) {
        for (int l = 0; l < m; ++l) {
          r(i, j, p, l) = k * (g(j, p) * g(i, l) - g(i, p) * g(j, l) + jg(j, p) * jg(i, l) -
                               jg(i, p) * jg(j, l));
        }
      }
    }
  }
  return r;
}

StructureCheckResult check_ambient(std::span<const ShapeData> shapes, const CheckOptions& opt,
                                   std::optional<double> k) {
  Worst jsq, jmetric, njet, ansatz;
  for (std::size_t p = 0; p < shapes.size(); ++p) {
    const auto& sd = shapes[p];
    const TensorValue& G = sd.ambient_g;
    const TensorValue& J = sd.ambient_J;
    const int m = G.dim();
    const double scale = std::max(max_abs(G), max_abs(J));
    const TensorValue j2 = compose11(J, J);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) jsq.add(j2(a, b) - (a == b ? 1.0 : 0.0), scale);
    }
    auto rng = make_rng(opt.seed, "ambient", p);
    for (int v = 0; v < opt.vectors; ++v) {
      const Vec x = random_vector(rng, m);
      const Vec y = random_vector(rng, m);
      jmetric.add(bilinear(G, act(J, x), act(J, y)) - bilinear(G, x, y), scale);
    }
    njet.add(max_abs(sd.ambient_nabla_J), scale);
    if (k) {
      const TensorValue want = almost_constant_curvature(G, J, *k);
      double gap = 0.0;
      for (std::size_t f = 0; f < want.size(); ++f) {
        gap = std::max(gap, std::abs(want[f] - sd.ambient_riemann[f]));
      }
      ansatz.add(gap, std::max(scale, max_abs(sd.ambient_riemann)));
    }
  }
  StructureCheckResult r;
  r.add(make_record("ambient.J_squared", "almost product structure: J^2 = I", jsq.value,
                    opt.tol.algebraic));
  r.add(make_record("ambient.J_metric", "almost product metric: g(JX, JY) = g(X, Y)",
                    jmetric.value, opt.tol.algebraic));
  r.add(make_record("ambient.nabla_J", "locally Riemannian product: nabla J = 0", njet.value,
                    opt.tol.first));
  if (k) {
    r.add(make_record("ambient.curvature_ansatz",
                      "almost constant curvature: R = k{g g - g g + g(J.,.)g(J.,.) - ...}",
                      ansatz.value, opt.tol.second, "k = " + format_number(*k)));
  } else {
    r.add(make_status_record("ambient.curvature_ansatz",
                             "almost constant curvature: R = k{g g - g g + g(J.,.)g(J.,.) - ...}",
                             CheckStatus::NotApplicable, "no curvature constant declared"));
  }
  return r;
}

StructureCheckResult check_shape_data(std::span<const ShapeData> shapes, int declared_epsilon,
                                      const CheckOptions& opt) {
  double eps_gap = 0.0, tangency = 0.0;
  Worst selfadj, hcons;
  for (const auto& sd : shapes) {
    const auto& tm = sd.tm;
    const int n = tm.n;
    eps_gap = std::max(eps_gap, std::abs(sd.normal_sign - declared_epsilon));
    tangency = std::max(tangency, sd.tangency);
    const TensorValue ga = lower_shape(tm, sd.A);
    const double scale = std::max({tm.scale(), max_abs(sd.A), max_abs(sd.h)});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        selfadj.add(ga(i, j) - ga(j, i), scale);
        hcons.add(sd.h(i, j) - sd.normal_sign * ga(i, j), scale);
      }
    }
  }
  StructureCheckResult r;
  r.add(make_record("induced.epsilon_consistent", "eps = g(N, N) at every sample point", eps_gap,
                    opt.tol.algebraic, "declared eps = " + std::to_string(declared_epsilon)));
  r.add(make_record("induced.tangency", "JN = xi is tangent: g(JN, N) = 0", tangency,
                    kTangencyTolerance));
  r.add(make_record("shape.self_adjoint", "shape operator: g(AX, Y) = g(X, AY)", selfadj.value,
                    opt.tol.first));
  r.add(make_record("shape.h_consistent", "Gauss and Weingarten formulas: h(X,Y) = eps g(AX, Y)",
                    hcons.value, opt.tol.algebraic));
  return r;
}

StructureCheckResult verify_induced_derivatives(std::span<const PointGeometry> pts,
                                                std::span<const ShapeData> shapes,
                                                const CheckOptions& opt) {
  if (pts.size() != shapes.size()) throw DimensionError("points and shapes differ in count");
  Worst dphi, deta, dxi;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& pg = pts[p];
    const auto& tm = pg.tm;
    const TensorValue& A = shapes[p].A;
    const int n = tm.n;
    const double e = tm.epsilon;
    const TensorValue np = values(pg.nabla_phi);
    const TensorValue nx = values(pg.nabla_xi);
    const TensorValue ne = values(pg.nabla_eta);
    const double scale =
        std::max({tm.scale(), max_abs(A), max_abs(np), max_abs(nx), max_abs(ne)});
    auto rng = make_rng(opt.seed, "induced", p);
    for (int v = 0; v < opt.vectors; ++v) {
      const Vec x = random_vector(rng, n);
      const Vec y = random_vector(rng, n);
      const Vec ax = act(A, x);
      const double gaxy = bilinear(tm.g, ax, y);
      Vec gap = apply_derivative11(np, x, y);
      const double ey = pair(tm.eta, y);
      for (int i = 0; i < n; ++i) gap[i] -= ey * ax[i] + e * gaxy * tm.xi[i];
      dphi.add(max_abs(gap), scale);
      deta.add(bilinear(ne, y, x) + e * bilinear(tm.g, ax, act(tm.phi, y)), scale);
      Vec gx = act(nx, x);
      const Vec pax = act(tm.phi, ax);
      for (int i = 0; i < n; ++i) gx[i] += pax[i];
      dxi.add(max_abs(gx), scale);
    }
  }
  StructureCheckResult r;
  r.add(make_record("induced.nabla_phi", "induced structure: (nabla_X phi)Y = eta(Y)AX + eps g(AX,Y)xi",
                    dphi.value, opt.tol.first));
  r.add(make_record("induced.nabla_eta", "induced structure: (nabla_X eta)Y = -eps g(AX, phi Y)",
                    deta.value, opt.tol.first));
  r.add(make_record("induced.nabla_xi", "induced structure: nabla_X xi = -phi AX", dxi.value,
                    opt.tol.first));
  return r;
}

StructureCheckResult check_gauss_consistency(std::span<const PointGeometry> pts,
                                             std::span<const ShapeData> shapes,
                                             const CheckOptions& opt) {
  if (pts.size() != shapes.size()) throw DimensionError("points and shapes differ in count");
  Worst w;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& sd = shapes[p];
    const int n = sd.tm.n;
    const int m = n + 1;
    const TensorValue R = values(pts[p].curvature().riemann_dddd);
    const TensorValue ga = lower_shape(sd.tm, sd.A);
    const auto& E = sd.tangent;
    // Restrict the ambient curvature to tangent vectors.
    TensorValue rt(n, {0, 4}, 0.0);
    for (std::size_t f = 0; f < sd.ambient_riemann.size(); ++f) {
      if (sd.ambient_riemann[f] == 0.0) continue;
      std::array<int, 4> a{};
      sd.ambient_riemann.unflatten(f, a);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
              rt(i, j, k, l) +=
                  sd.ambient_riemann[f] * E[i][a[0]] * E[j][a[1]] * E[k][a[2]] * E[l][a[3]];
            }
          }
        }
      }
    }
    (void)m;
    double gap = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          for (int l = 0; l < n; ++l) {
            const double want = rt(i, j, k, l) + sd.normal_sign * (ga(j, k) * ga(i, l) -
                                                                   ga(i, k) * ga(j, l));
            gap = std::max(gap, std::abs(R(i, j, k, l) - want));
          }
        }
      }
    }
    w.add(gap, std::max({sd.tm.scale(), max_abs(R), max_abs(ga)}));
  }
  StructureCheckResult r;
  r.add(make_record("hypersurface.gauss_consistency",
                    "Gauss equation: R = R~ + eps (g(AY,Z)g(AX,W) - g(AX,Z)g(AY,W))", w.value,
                    opt.tol.third));
  return r;
}

TensorValue para_sasakian_shape(const TangentModel& tm) {
  const int n = tm.n;
  const double e = tm.epsilon;
  TensorValue A(n, {1, 1}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A(i, j) = (i == j ? -e : 0.0) + e * tm.xi[i] * tm.eta[j];
  }
  return A;
}

TensorValue second_fundamental_form(const TangentModel& tm, const TensorValue& A) {
  TensorValue h = lower_shape(tm, A);
  h *= static_cast<double>(tm.epsilon);
  return h;
}

double shape_gap(const TangentModel& tm, const TensorValue& A) {
  const TensorValue want = para_sasakian_shape(tm);
  double gap = 0.0;
  for (std::size_t f = 0; f < A.size(); ++f) gap = std::max(gap, std::abs(A[f] - want[f]));
  return normalized(gap, std::max(tm.scale(), max_abs(A)));
}

double ps_gap_from_shape(const TangentModel& tm, const TensorValue& A, const CheckOptions& opt,
                         std::uint64_t stream) {
  const int n = tm.n;
  const double e = tm.epsilon;
  auto rng = make_rng(opt.seed, "ps_from_shape", stream);
  Worst w;
  const double scale = std::max(tm.scale(), max_abs(A));
  for (int v = 0; v < opt.vectors; ++v) {
    const Vec x = random_vector(rng, n);
    const Vec y = random_vector(rng, n);
    const Vec ax = act(A, x);
    const Vec px = act(tm.phi, x);
    const Vec ppx = act(tm.phi, px);
    const double ey = pair(tm.eta, y);
    const double gaxy = bilinear(tm.g, ax, y);
    const double gpp = bilinear(tm.g, px, act(tm.phi, y));
    double gap = 0.0;
    for (int i = 0; i < n; ++i) {
      const double lhs = ey * ax[i] + e * gaxy * tm.xi[i];
      const double rhs = -gpp * tm.xi[i] - e * ey * ppx[i];
      gap = std::max(gap, std::abs(lhs - rhs));
    }
    w.add(gap, scale);
  }
  return w.value;
}

ConstructiveInverse solve_shape_from_ps(const TangentModel& tm, std::mt19937_64& rng) {
  const int n = tm.n;
  const double e = tm.epsilon;
  const int unknowns = n * n;
  const int pairs = unknowns;
  Eigen::MatrixXd M(pairs * n, unknowns);
  Eigen::VectorXd rhs(pairs * n);
  M.setZero();
  for (int p = 0; p < pairs; ++p) {
    const Vec x = random_vector(rng, n);
    const Vec y = random_vector(rng, n);
    const double ey = pair(tm.eta, y);
    const Vec gy = [&] {
      Vec out(n, 0.0);
      for (int a = 0; a < n; ++a) {
        for (int c = 0; c < n; ++c) out[a] += tm.g(a, c) * y[c];
      }
      return out;
    }();
    const Vec px = act(tm.phi, x);
    const Vec ppx = act(tm.phi, px);
    const double gpp = bilinear(tm.g, px, act(tm.phi, y));
    for (int i = 0; i < n; ++i) {
      const int row = p * n + i;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          double coef = e * tm.xi[i] * x[b] * gy[a];
          if (a == i) coef += ey * x[b];
          M(row, a * n + b) = coef;
        }
      }
      rhs(row) = -gpp * tm.xi[i] - e * ey * ppx[i];
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  qr.setThreshold(1e-10);
  const Eigen::VectorXd sol = qr.solve(rhs);
  ConstructiveInverse out;
  out.unknowns = unknowns;
  out.rank = static_cast<int>(qr.rank());
  out.A = TensorValue(n, {1, 1}, 0.0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out.A(a, b) = sol(a * n + b);
  }
  out.residual = shape_gap(tm, out.A);
  return out;
}

CharacterizationResult check_ps_characterization(std::span<const PointGeometry> pts,
                                                 std::span<const ShapeData> shapes,
                                                 const CheckOptions& opt) {
  if (pts.size() != shapes.size()) throw DimensionError("points and shapes differ in count");
  CharacterizationResult out;
  const double tol = opt.tol.first;
  int disagree = 0, both_ps = 0;
  double inverse_gap = 0.0;
  int min_rank = -1, unknowns = 0;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& pg = pts[p];
    const auto& tm = pg.tm;
    const int n = tm.n;
    const double e = tm.epsilon;
    const TensorValue np = values(pg.nabla_phi);
    const double scale = std::max(tm.scale(), max_abs(np));
    auto rng = make_rng(opt.seed, "characterization", p);
    Worst rho1;
    for (int v = 0; v < opt.vectors; ++v) {
      const Vec x = random_vector(rng, n);
      const Vec y = random_vector(rng, n);
      const Vec px = act(tm.phi, x);
      Vec gap = apply_derivative11(np, x, y);
      const double gpp = bilinear(tm.g, px, act(tm.phi, y));
      const Vec ppx = act(tm.phi, px);
      const double ey = pair(tm.eta, y);
      for (int i = 0; i < n; ++i) gap[i] += gpp * tm.xi[i] + e * ey * ppx[i];
      rho1.add(max_abs(gap), scale);
    }
    const double r2 = shape_gap(tm, shapes[p].A);
    out.rho1.push_back(rho1.value);
    out.rho2.push_back(r2);
    const bool ps = rho1.value <= tol;
    const bool form = r2 <= tol;
    if (ps != form) ++disagree;
    if (ps && form) ++both_ps;
    auto irng = make_rng(opt.seed, "constructive_inverse", p);
    const auto inv = solve_shape_from_ps(tm, irng);
    inverse_gap = std::max(inverse_gap, inv.residual);
    min_rank = min_rank < 0 ? inv.rank : std::min(min_rank, inv.rank);
    unknowns = inv.unknowns;
  }
  const auto [r1lo, r1hi] = std::minmax_element(out.rho1.begin(), out.rho1.end());
  const auto [r2lo, r2hi] = std::minmax_element(out.rho2.begin(), out.rho2.end());
  std::string note;
  if (!out.rho1.empty()) {
    note = "rho1 in [" + format_number(*r1lo) + ", " + format_number(*r1hi) + "], rho2 in [" +
           format_number(*r2lo) + ", " + format_number(*r2hi) + "], both sides true at " +
           std::to_string(both_ps) + "/" + std::to_string(pts.size()) + " points";
  }
  out.result.add(make_record("characterization.iff",
                             "para-Sasakian if and only if A = -eps I + eps eta(x)xi",
                             static_cast<double>(disagree), 0.0, note));
  if (min_rank < unknowns) {
    out.result.add(CheckRecord{"characterization.constructive_inverse",
                               "forward direction: the nabla phi display forces A", inverse_gap,
                               opt.tol.algebraic * 10.0, CheckStatus::Fail,
                               "linear system rank " + std::to_string(min_rank) + " < " +
                                   std::to_string(unknowns)});
  } else {
    out.result.add(make_record("characterization.constructive_inverse",
                               "forward direction: the nabla phi display forces A", inverse_gap,
                               opt.tol.algebraic * 10.0));
  }
  return out;
}

CheckRecord quasi_umbilical_check(std::span<const TangentModel> tms,
                                  std::span<const TensorValue> shape_ops,
                                  std::span<const TensorValue> second_forms,
                                  const CheckOptions& opt, bool assume_ps) {
  const char* id = "hypersurface.quasi_umbilical";
  const char* anchor = "quasi-umbilical: h = -g + eps eta(x)eta";
  if (!assume_ps) {
    for (std::size_t p = 0; p < tms.size(); ++p) {
      if (shape_gap(tms[p], shape_ops[p]) > opt.tol.first) {
        return make_status_record(id, anchor, CheckStatus::NotApplicable,
                                  "precondition failed: shape operator is not -eps I + eps eta(x)xi");
      }
    }
  }
  Worst w;
  for (std::size_t p = 0; p < tms.size(); ++p) {
    const auto& tm = tms[p];
    const auto& h = second_forms[p];
    const int n = tm.n;
    double gap = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        gap = std::max(gap, std::abs(h(i, j) - (-tm.g(i, j) + tm.epsilon * tm.eta[i] * tm.eta[j])));
      }
    }
    w.add(gap, std::max(tm.scale(), max_abs(h)));
  }
  return make_record(id, anchor, w.value, opt.tol.algebraic, "alpha = -1, beta = eps, u = eta");
}

}  // namespace paracontact
