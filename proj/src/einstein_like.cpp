#include "paracontact/einstein_like.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

namespace paracontact {

namespace {

using Vec = std::vector<double>;

constexpr double kRankThreshold = 1e-10;
constexpr double kDegenerateC = 1e-8;
constexpr double kTraceConstancy = 1e-7;
constexpr double kConstantsAgreement = 1e-6;

const char* const kNotPs = "precondition failed: structure is not para-Sasakian";
const char* const kNotEinstein = "precondition failed: Ricci tensor is not Einstein like";
const char* const kTraceVaries = "precondition failed: trace(phi) is not constant";

struct Worst {
  double value = 0.0;
  void add(double gap, double scale) { value = std::max(value, normalized(gap, scale)); }
};

std::string coeff_text(const Coefficients& k) {
  return "(" + format_number(k.a) + ", " + format_number(k.b) + ", " + format_number(k.c) + ")";
}

// alpha g + beta Phi + gamma eta(x)eta
TensorValue combo(const TangentModel& tm, const TensorValue& Phi, double alpha, double beta,
                  double gamma) {
  const int n = tm.n;
  TensorValue out(n, {0, 2}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = alpha * tm.g(i, j) + beta * Phi(i, j) + gamma * tm.eta[i] * tm.eta[j];
    }
  }
  return out;
}

double max_gap(const TensorValue& a, const TensorValue& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Gap at (xi, xi) after projecting: used for reporting eta(x)eta-block mismatches.
double on_xi(const TensorValue& t, const TangentModel& tm) {
  return bilinear(t, tm.xi.data(), tm.xi.data());
}

bool is_einstein(const EinsteinLikeFit& fit, const CheckOptions& opt) {
  return fit.einstein_like(opt.tol.second);
}

bool trace_constant(std::span<const PointGeometry> pts, double* spread = nullptr) {
  double lo = 0.0, hi = 0.0;
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const double t = trace_phi(pts[p]);
    if (p == 0 || t < lo) lo = t;
    if (p == 0 || t > hi) hi = t;
  }
  if (spread) *spread = hi - lo;
  return hi - lo <= kTraceConstancy;
}

std::vector<FamilyMember> nondegenerate(const EinsteinLikeFit& fit, std::string& skipped) {
  std::vector<FamilyMember> out;
  for (auto& m : fit.members()) {
    if (std::abs(m.k.c) < kDegenerateC) {
      skipped += (skipped.empty() ? "" : ", ") + m.label;
    } else {
      out.push_back(m);
    }
  }
  return out;
}

std::string xi_gap_note(double minimum_norm, double worst) {
  return "gap on (xi, xi): " + format_number(minimum_norm) + " for the minimum-norm member, " +
         format_number(worst) + " over all members";
}

void not_applicable(StructureCheckResult& r, std::initializer_list<std::pair<const char*, const char*>> ids,
                    const std::string& why) {
  for (auto [id, anchor] : ids) r.add(make_status_record(id, anchor, CheckStatus::NotApplicable, why));
}

}  // namespace

Coefficients EinsteinLikeFit::member(double t, std::size_t direction) const {
  Coefficients k = coeffs;
  if (direction < family.size()) {
    k.a += t * family[direction][0];
    k.b += t * family[direction][1];
    k.c += t * family[direction][2];
  }
  return k;
}

std::vector<FamilyMember> EinsteinLikeFit::members() const {
  std::vector<FamilyMember> out{{"t=0", coeffs}};
  for (std::size_t d = 0; d < family.size(); ++d) {
    const std::string suffix = family.size() > 1 ? "/dir" + std::to_string(d + 1) : "";
    out.push_back({"t=-1" + suffix, member(-1.0, d)});
    out.push_back({"t=1" + suffix, member(1.0, d)});
  }
  return out;
}

EinsteinSample einstein_sample(const PointGeometry& pg) {
  return {pg.point, pg.tm.g, pg.tm.fundamental_form(), pg.tm.eta, pg.ricci};
}

EinsteinLikeFit fit_einstein_like(std::vector<EinsteinSample> samples) {
  if (samples.size() < 3) throw FitError("fit_einstein_like: at least 3 samples are required");
  const int n = samples.front().g.dim();
  for (const auto& s : samples) {
    if (s.g.dim() != n || s.Phi.dim() != n || s.eta.dim() != n || s.S.dim() != n) {
      throw FitError("fit_einstein_like: inconsistent sample dimensions");
    }
  }
  std::sort(samples.begin(), samples.end(),
            [](const EinsteinSample& x, const EinsteinSample& y) { return x.point < y.point; });
  const Eigen::Index rows = static_cast<Eigen::Index>(samples.size()) * n * n;
  Eigen::MatrixXd m(rows, 3);
  Eigen::VectorXd rhs(rows);
  Eigen::Index row = 0;
  for (const auto& s : samples) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j, ++row) {
        m(row, 0) = s.g(i, j);
        m(row, 1) = s.Phi(i, j);
        m(row, 2) = s.eta[i] * s.eta[j];
        rhs(row) = s.S(i, j);
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  EinsteinLikeFit fit;
  fit.samples = samples.size();
  for (int k = 0; k < 3; ++k) fit.singular_values[k] = sv(k);
  if (sv(0) == 0.0) throw FitError("fit_einstein_like: g, Phi and eta(x)eta all vanish");
  for (int k = 0; k < 3; ++k) fit.gram_rank += sv(k) > kRankThreshold * sv(0) ? 1 : 0;

  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  for (int k = 0; k < fit.gram_rank; ++k) {
    x += svd.matrixV().col(k) * (svd.matrixU().col(k).dot(rhs) / sv(k));
  }
  fit.coeffs = {x(0), x(1), x(2)};
  for (int k = fit.gram_rank; k < 3; ++k) {
    Eigen::Vector3d d = svd.matrixV().col(k);
    const double big = d.cwiseAbs().maxCoeff();
    for (int c = 0; c < 3; ++c) {
      if (std::abs(d(c)) > 1e-12 * big) {
        d /= d(c);
        break;
      }
    }
    fit.family.push_back({d(0), d(1), d(2)});
  }
  fit.residual = (m * x - rhs).cwiseAbs().maxCoeff();
  fit.scale = std::max(m.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff());
  return fit;
}

EinsteinLikeFit fit_einstein_like(std::span<const PointGeometry> pts) {
  std::vector<EinsteinSample> samples;
  samples.reserve(pts.size());
  for (const auto& pg : pts) samples.push_back(einstein_sample(pg));
  return fit_einstein_like(std::move(samples));
}

TensorJet compute_c11_phi_r(const PointGeometry& pg) {
  const auto& R = pg.curvature().riemann_ud;
  const auto& phi = pg.jets.phi;
  const int n = pg.dim();
  const Jet zero = R[0].constant(0.0);
  TensorJet out(n, {0, 2}, zero);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Jet acc = zero;
      for (int i = 0; i < n; ++i) {
        for (int l = 0; l < n; ++l) acc += phi(i, l) * R(l, i, j, k);
      }
      out(j, k) = acc;
    }
  }
  return out;
}

C11Coefficients c11_coefficients_derived(const Coefficients& k, int n, int epsilon) {
  const double e = epsilon;
  return {(k.b / k.c) * (k.c + n - 1), k.a - e * (n - 2), -(e * k.b / k.c) * (k.c + 2.0 * (n - 1))};
}

C11Coefficients c11_coefficients_printed(const Coefficients& k, int n, int epsilon) {
  const double e = epsilon;
  return {(k.b / k.c) * (k.c + n - 1), k.a - e * (n - 2), -(e / k.c) * (k.c + 2.0 * k.b * (n - 1))};
}

double trace_phi(const PointGeometry& pg) {
  double t = 0.0;
  for (int i = 0; i < pg.dim(); ++i) t += pg.tm.phi(i, i);
  return t;
}

OdeSides scalar_ode_sides(const Coefficients& k, const PointGeometry& pg) {
  const auto& c = pg.curvature();
  const int n = pg.dim();
  const double e = pg.epsilon();
  const double r = c.scalar.value();
  const double xi_r = pair(c.dr, pg.tm.xi.data());
  return {k.b * xi_r - 2.0 * k.c * r, 2.0 * e * (1 - n) * (k.b * k.b - k.c * k.c - k.c * n)};
}

StructureCheckResult verify_einstein_fit(const EinsteinLikeFit& fit,
                                         std::span<const PointGeometry> pts,
                                         const CheckOptions& opt) {
  StructureCheckResult r;
  std::string note = "rank " + std::to_string(fit.gram_rank) + ", min-norm (a,b,c) = " +
                     coeff_text(fit.coeffs);
  for (const auto& d : fit.family) note += ", family direction " + coeff_text({d[0], d[1], d[2]});
  const bool ok = is_einstein(fit, opt);
  if (!ok) note += "; not Einstein like";
  r.add(make_record("einstein.fit", "Einstein-like definition: S = a g + b Phi + c eta(x)eta",
                    fit.normalized_residual(), opt.tol.second, note));
  if (!ok) {
    not_applicable(r, {{"einstein.constants_stable", "Einstein-like definition: a, b, c constant"},
                       {"einstein.reconstruction", "Einstein-like definition: every family member"}},
                   kNotEinstein);
    return r;
  }

  // Refit on two disjoint halves of the (sorted) samples.
  std::vector<EinsteinSample> all;
  for (const auto& pg : pts) all.push_back(einstein_sample(pg));
  std::sort(all.begin(), all.end(),
            [](const EinsteinSample& x, const EinsteinSample& y) { return x.point < y.point; });
  std::vector<EinsteinSample> even, odd;
  for (std::size_t i = 0; i < all.size(); ++i) (i % 2 ? odd : even).push_back(all[i]);
  if (even.size() < 3 || odd.size() < 3) {
    r.add(make_status_record("einstein.constants_stable",
                             "Einstein-like definition: a, b, c constant", CheckStatus::Vacuous,
                             "fewer than 6 samples"));
  } else {
    const auto f1 = fit_einstein_like(even);
    const auto f2 = fit_einstein_like(odd);
    const double gap = std::max({std::abs(f1.coeffs.a - f2.coeffs.a),
                                 std::abs(f1.coeffs.b - f2.coeffs.b),
                                 std::abs(f1.coeffs.c - f2.coeffs.c)});
    std::string n2 = "halves " + coeff_text(f1.coeffs) + " and " + coeff_text(f2.coeffs);
    if (f1.gram_rank != f2.gram_rank) n2 += "; ranks differ";
    r.add(make_record("einstein.constants_stable", "Einstein-like definition: a, b, c constant",
                      f1.gram_rank == f2.gram_rank ? gap : std::max(gap, 1.0),
                      kConstantsAgreement, n2));
  }

  Worst recon;
  for (const auto& m : fit.members()) {
    for (const auto& pg : pts) {
      const TensorValue Phi = pg.tm.fundamental_form();
      const TensorValue rebuilt = combo(pg.tm, Phi, m.k.a, m.k.b, m.k.c);
      recon.add(max_gap(rebuilt, pg.ricci), std::max(pg.tm.scale(), max_abs(pg.ricci)));
    }
  }
  r.add(make_record("einstein.reconstruction", "Einstein-like definition: every family member",
                    recon.value, opt.tol.second));
  return r;
}

StructureCheckResult verify_coefficient_constraints(const EinsteinLikeFit& fit,
                                                    std::span<const PointGeometry> pts,
                                                    const CheckOptions& opt, bool para_sasakian) {
  StructureCheckResult r;
  const char* id_phi = "einstein.S_phiX_Y";
  const char* an_phi = "Einstein-like: S(phi X, Y) = a g(phi X, Y) + b g(phi X, phi Y)";
  const char* id_xi = "einstein.S_X_xi";
  const char* an_xi = "Einstein-like: S(X, xi) = eps a eta(X) + c eta(X)";
  const char* id_ac = "einstein.eps_a_plus_c";
  const char* an_ac = "Einstein-like para-Sasakian: eps a + c = 1 - n";
  const char* id_r = "einstein.scalar_curvature";
  const char* an_r = "Einstein-like para-Sasakian: r = n a + b trace(phi) + eps c";
  if (!is_einstein(fit, opt)) {
    not_applicable(r, {{id_phi, an_phi}, {id_xi, an_xi}, {id_ac, an_ac}, {id_r, an_r}},
                   kNotEinstein);
    return r;
  }
  Worst sphi, sxi, ac, rr;
  const auto members = fit.members();
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& pg = pts[p];
    const auto& tm = pg.tm;
    const int n = tm.n;
    const double e = tm.epsilon;
    const TensorValue Phi = tm.fundamental_form();
    const double scale = std::max(tm.scale(), max_abs(pg.ricci));
    const double rval = pg.curvature().scalar.value();
    const double tr = trace_phi(pg);
    auto rng = make_rng(opt.seed, "einstein.constraints", p);
    std::vector<std::pair<Vec, Vec>> vecs;
    for (int v = 0; v < opt.vectors; ++v) {
      Vec x = random_vector(rng, n);
      Vec y = random_vector(rng, n);
      vecs.emplace_back(std::move(x), std::move(y));
    }
    for (const auto& m : members) {
      const auto& k = m.k;
      for (const auto& [x, y] : vecs) {
        const Vec px = act(tm.phi, x);
        const Vec py = act(tm.phi, y);
        sphi.add(bilinear(pg.ricci, px, y) - k.a * bilinear(Phi, x, y) -
                     k.b * bilinear(tm.g, px, py),
                 scale);
        sxi.add(bilinear(pg.ricci, x, tm.xi.data()) - (e * k.a + k.c) * pair(tm.eta, x), scale);
      }
      ac.add(e * k.a + k.c - (1.0 - n), 0.0);
      rr.add(rval - (n * k.a + k.b * tr + e * k.c), std::max(scale, std::abs(rval)));
    }
  }
  r.add(make_record(id_phi, an_phi, sphi.value, opt.tol.second));
  r.add(make_record(id_xi, an_xi, sxi.value, opt.tol.second));
  if (para_sasakian) {
    r.add(make_record(id_ac, an_ac, ac.value, opt.tol.algebraic, "all family members"));
    r.add(make_record(id_r, an_r, rr.value, opt.tol.second, "all family members"));
  } else {
    not_applicable(r, {{id_ac, an_ac}, {id_r, an_r}}, kNotPs);
  }
  return r;
}

StructureCheckResult verify_scalar_ode(const EinsteinLikeFit& fit,
                                       std::span<const PointGeometry> pts,
                                       const CheckOptions& opt, bool para_sasakian) {
  StructureCheckResult r;
  const char* id_nq = "einstein.nabla_Q";
  const char* an_nq =
      "Einstein-like para-Sasakian: (nabla_Y Q)X = -eps b eta(X)Y + c eta(X) phi Y - (...) xi";
  const char* id_div = "einstein.div_Q";
  const char* an_div = "Einstein-like para-Sasakian: (div Q)X = {eps(1-n)b + c trace(phi)} eta(X)";
  const char* id_r = "einstein.r_formula";
  const char* an_r = "Einstein-like para-Sasakian: r = b trace(phi) - eps(n-1)(c+n)";
  const char* id_dr = "einstein.dr";
  const char* an_dr = "Einstein-like para-Sasakian: dr = 2(eps(1-n)b + c trace(phi)) eta";
  const char* id_ode = "einstein.scalar_ode";
  const char* an_ode = "scalar curvature ODE: b xi(r) - 2cr = 2 eps(1-n)(b^2 - c^2 - cn)";
  const char* id_two = "einstein.second_equation";
  const char* an_two = "scalar curvature ODE: second announced equation";
  const auto ids = {std::pair{id_nq, an_nq}, std::pair{id_div, an_div}, std::pair{id_r, an_r},
                    std::pair{id_dr, an_dr}, std::pair{id_ode, an_ode}};
  if (!para_sasakian || !is_einstein(fit, opt)) {
    for (auto [id, an] : ids) {
      r.add(make_status_record(id, an, CheckStatus::NotApplicable,
                               para_sasakian ? kNotEinstein : kNotPs));
    }
  } else {
    Worst nq, div, rf, dr, ode;
    const auto members = fit.members();
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto& pg = pts[p];
      const auto& tm = pg.tm;
      const auto& c = pg.curvature();
      const int n = tm.n;
      const double e = tm.epsilon;
      const TensorValue Phi = tm.fundamental_form();
      const TensorValue nabla_q = values(covariant_derivative(c.ricci_op, pg.conn));
      const double rval = c.scalar.value();
      const double tr = trace_phi(pg);
      const double scale = std::max({tm.scale(), max_abs(pg.ricci), max_abs(nabla_q),
                                     std::abs(rval), max_abs(c.dr)});
      auto rng = make_rng(opt.seed, "einstein.ode", p);
      std::vector<std::pair<Vec, Vec>> vecs;
      for (int v = 0; v < opt.vectors; ++v) {
        Vec x = random_vector(rng, n);
        Vec y = random_vector(rng, n);
        vecs.emplace_back(std::move(x), std::move(y));
      }
      for (const auto& m : members) {
        const auto& k = m.k;
        const double coef = e * (1 - n) * k.b + k.c * tr;
        for (const auto& [x, y] : vecs) {
          const double ex = pair(tm.eta, x);
          const double ey = pair(tm.eta, y);
          Vec gap = apply_derivative11(nabla_q, y, x);
          const Vec py = act(tm.phi, y);
          const double along_xi =
              k.b * bilinear(tm.g, x, y) - 2.0 * e * k.b * ex * ey - e * k.c * bilinear(Phi, x, y);
          for (int i = 0; i < n; ++i) {
            gap[i] -= -e * k.b * ex * y[i] + k.c * ex * py[i] - along_xi * tm.xi[i];
          }
          nq.add(max_abs(gap), scale);
          div.add(pair(c.div_q, x) - coef * ex, scale);
          dr.add(pair(c.dr, x) - 2.0 * coef * ex, scale);
        }
        rf.add(rval - (k.b * tr - e * (n - 1) * (k.c + n)), scale);
        const OdeSides s = scalar_ode_sides(k, pg);
        ode.add(s.lhs - s.rhs, std::max({scale, std::abs(s.lhs), std::abs(s.rhs)}));
      }
    }
    r.add(make_record(id_nq, an_nq, nq.value, opt.tol.third, "all family members"));
    r.add(make_record(id_div, an_div, div.value, opt.tol.third, "all family members"));
    r.add(make_record(id_r, an_r, rf.value, opt.tol.second, "all family members"));
    r.add(make_record(id_dr, an_dr, dr.value, opt.tol.third, "all family members"));
    r.add(make_record(id_ode, an_ode, ode.value, opt.tol.third, "all family members"));
  }
  r.add(make_status_record(id_two, an_two, CheckStatus::Vacuous,
                           "two equations are announced but only one is displayed"));
  return r;
}

StructureCheckResult verify_trace_formula(const EinsteinLikeFit& fit,
                                          std::span<const PointGeometry> pts,
                                          const CheckOptions& opt, bool para_sasakian) {
  StructureCheckResult r;
  const char* id_c = "einstein.trace_constant";
  const char* an_c = "trace(phi) constant over the samples";
  const char* id_t = "einstein.trace_formula";
  const char* an_t = "Einstein-like para-Sasakian, constant trace: trace(phi) = eps(n-1)b/c";
  double spread = 0.0;
  const bool constant = trace_constant(pts, &spread);
  r.add(make_record(id_c, an_c, spread, kTraceConstancy));
  if (!para_sasakian || !is_einstein(fit, opt) || !constant) {
    r.add(make_status_record(id_t, an_t, CheckStatus::NotApplicable,
                             !para_sasakian ? kNotPs : !constant ? kTraceVaries : kNotEinstein));
    return r;
  }
  std::string skipped;
  const auto members = nondegenerate(fit, skipped);
  if (members.empty()) {
    r.add(make_status_record(id_t, an_t, CheckStatus::Vacuous,
                             "every family member has degenerate c: " + skipped));
    return r;
  }
  Worst w;
  for (const auto& pg : pts) {
    const double tr = trace_phi(pg);
    const int n = pg.dim();
    for (const auto& m : members) {
      w.add(tr - pg.epsilon() * (n - 1) * m.k.b / m.k.c, std::abs(tr));
    }
  }
  r.add(make_record(id_t, an_t, w.value, opt.tol.algebraic * 10.0,
                    skipped.empty() ? "" : "skipped degenerate members: " + skipped));
  return r;
}

StructureCheckResult verify_c11_decomposition(const EinsteinLikeFit& fit,
                                              std::span<const PointGeometry> pts,
                                              const CheckOptions& opt, bool para_sasakian) {
  StructureCheckResult r;
  const char* id_sym = "c11.symmetric";
  const char* an_sym = "C11(phi R)(Y,Z) = C11(phi R)(Z,Y)";
  const char* id_disp = "c11.S_Y_phiZ";
  const char* an_disp =
      "S(Y, phi Z) = C11(phi R)(Y,Z) + eps(n-2)Phi(Y,Z) + (2 eta(Y)eta(Z) - eps g(Y,Z)) trace(phi)";
  const char* id_dec = "c11.decomposition";
  const char* an_dec =
      "C11(phi R) = (b/c)(c+n-1) g + (a - eps(n-2)) Phi - (eps b/c)(c + 2(n-1)) eta(x)eta";
  const char* id_pr = "c11.decomposition.printed";
  const char* an_pr =
      "C11(phi R) = (b/c)(c+n-1) g + (a - eps(n-2)) Phi - (eps/c)(c + 2b(n-1)) eta(x)eta";
  const char* id_par = "c11.parallel_xi";
  const char* an_par = "C11(phi R) is parallel along xi";

  Worst sym, disp, dec, pr, par;
  double printed_xi_gap = 0.0, printed_xi_gap_min = 0.0;
  std::string skipped;
  const bool einstein = is_einstein(fit, opt);
  const bool constant = trace_constant(pts);
  const auto members = einstein ? nondegenerate(fit, skipped) : std::vector<FamilyMember>{};
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto& pg = pts[p];
    const auto& tm = pg.tm;
    const int n = tm.n;
    const double e = tm.epsilon;
    const TensorJet cj = compute_c11_phi_r(pg);
    const TensorValue C = values(cj);
    const TensorValue Phi = tm.fundamental_form();
    const double tr = trace_phi(pg);
    const double scale = std::max({tm.scale(), max_abs(C), max_abs(pg.ricci)});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) sym.add(C(i, j) - C(j, i), scale);
    }
    auto rng = make_rng(opt.seed, "c11", p);
    for (int v = 0; v < opt.vectors; ++v) {
      const Vec y = random_vector(rng, n);
      const Vec z = random_vector(rng, n);
      const double rhs = bilinear(C, y, z) + e * (n - 2) * bilinear(Phi, y, z) +
                         (2.0 * pair(tm.eta, y) * pair(tm.eta, z) - e * bilinear(tm.g, y, z)) * tr;
      disp.add(bilinear(pg.ricci, y, act(tm.phi, z)) - rhs, scale);
    }
    for (const auto& m : members) {
      const auto d = c11_coefficients_derived(m.k, n, tm.epsilon);
      const auto q = c11_coefficients_printed(m.k, n, tm.epsilon);
      const double s = std::max({scale, std::abs(d.g), std::abs(d.Phi), std::abs(d.eta_eta)});
      dec.add(max_gap(C, combo(tm, Phi, d.g, d.Phi, d.eta_eta)), s);
      const TensorValue printed = combo(tm, Phi, q.g, q.Phi, q.eta_eta);
      pr.add(max_gap(C, printed), s);
      const double xg = std::abs(on_xi(printed, tm) - on_xi(C, tm));
      printed_xi_gap = std::max(printed_xi_gap, xg);
      if (m.label == "t=0") printed_xi_gap_min = std::max(printed_xi_gap_min, xg);
    }
    if (einstein && constant) {
      const TensorValue nc = values(covariant_derivative(cj, pg.conn));
      double worst = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += nc(i, j, m) * tm.xi[m];
          worst = std::max(worst, std::abs(s));
        }
      }
      par.add(worst, std::max(scale, max_abs(nc)));
    }
  }
  r.add(make_record(id_sym, an_sym, sym.value, opt.tol.first));
  if (para_sasakian) {
    r.add(make_record(id_disp, an_disp, disp.value, opt.tol.second));
  } else {
    not_applicable(r, {{id_disp, an_disp}}, kNotPs);
  }
  if (!para_sasakian || !einstein || !constant) {
    const std::string why = !para_sasakian ? kNotPs : !einstein ? kNotEinstein : kTraceVaries;
    not_applicable(r, {{id_dec, an_dec}, {id_pr, an_pr}, {id_par, an_par}}, why);
    return r;
  }
  if (members.empty()) {
    const std::string why = "every family member has degenerate c: " + skipped;
    r.add(make_status_record(id_dec, an_dec, CheckStatus::Vacuous, why));
    r.add(make_status_record(id_pr, an_pr, CheckStatus::Vacuous, why));
  } else {
    const std::string note = skipped.empty() ? "" : "skipped degenerate members: " + skipped;
    r.add(make_record(id_dec, an_dec, dec.value, opt.tol.second, note));
    r.add(make_printed_record(id_pr, an_pr, pr.value, opt.tol.second,
                              xi_gap_note(printed_xi_gap_min, printed_xi_gap)));
  }
  r.add(make_record(id_par, an_par, par.value, opt.tol.third));
  return r;
}

StructureCheckResult verify_lie_formulas(const EinsteinLikeFit& fit,
                                         std::span<const PointGeometry> pts,
                                         const CheckOptions& opt, bool para_sasakian) {
  StructureCheckResult r;
  const char* id_eta = "lie.xi_eta";
  const char* an_eta = "L_xi eta = nabla_xi eta = 0";
  const char* id_g = "lie.xi_g";
  const char* an_g = "L_xi g = 2 eps Phi";
  const char* id_phi = "lie.xi_Phi";
  const char* an_phi = "L_xi Phi = 2 eps (g - eps eta(x)eta)";
  const char* id_phi_pr = "lie.xi_Phi.printed";
  const char* an_phi_pr = "L_xi Phi = 2 eps (g - eta(x)eta)";
  const char* id_s = "lie.xi_S";
  const char* an_s = "L_xi S = 2 a eps Phi + 2 b eps (g - eps eta(x)eta)";
  const char* id_c = "lie.xi_c11";
  const char* an_c = "L_xi C11(phi R) = (2 eps b/c)(c+n-1) Phi + 2 eps (a - eps(n-2))(g - eps eta(x)eta)";
  const char* id_c_pr = "lie.xi_c11.printed";
  const char* an_c_pr = "L_xi C11(phi R) = (2 eps b/c)(c+n-1) Phi + 2 eps (a - eps(n-2))(g - eta(x)eta)";
  const char* id_routes = "lie.routes_agree";
  const char* an_routes = "Lie derivative via partials equals Lie derivative via nabla";

  const bool einstein = is_einstein(fit, opt);
  const bool constant = trace_constant(pts);
  std::string skipped;
  const auto all_members = einstein ? fit.members() : std::vector<FamilyMember>{};
  const auto members = einstein ? nondegenerate(fit, skipped) : std::vector<FamilyMember>{};

  Worst weta, wg, wphi, wphi_pr, ws, wc, wc_pr, routes;
  double phi_pr_xi = 0.0, c_pr_xi = 0.0, c_pr_xi_min = 0.0;
  for (const auto& pg : pts) {
    const auto& tm = pg.tm;
    const int n = tm.n;
    const double e = tm.epsilon;
    const auto& xi = pg.jets.xi;
    const TensorValue Phi = tm.fundamental_form();

    const TensorValue l_eta = values(lie_derivative(pg.jets.eta, xi, pg.conn));
    TensorValue nxi_eta(n, {0, 1}, 0.0);
    const TensorValue ne = values(pg.nabla_eta);
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) nxi_eta[j] += ne(j, m) * tm.xi[m];
    }
    const double base = tm.scale();
    weta.add(std::max(max_abs(l_eta), max_abs(nxi_eta)), std::max(base, max_abs(ne)));

    const TensorValue l_g = values(lie_derivative(pg.jets.g, xi, pg.conn));
    const TensorValue l_g_cov = values(lie_derivative(pg.jets.g, xi, pg.conn, LieRoute::Covariant));
    wg.add(max_gap(l_g, Phi * (2.0 * e)), std::max(base, max_abs(l_g)));

    const TensorValue l_phi = values(lie_derivative(pg.Phi, xi, pg.conn));
    const TensorValue l_phi_cov = values(lie_derivative(pg.Phi, xi, pg.conn, LieRoute::Covariant));
    const TensorValue derived = combo(tm, Phi, 2.0 * e, 0.0, -2.0);  // 2 eps (g - eps eta eta)
    const TensorValue printed = combo(tm, Phi, 2.0 * e, 0.0, -2.0 * e);
    const double sphi = std::max(base, max_abs(l_phi));
    wphi.add(max_gap(l_phi, derived), sphi);
    wphi_pr.add(max_gap(l_phi, printed), sphi);
    phi_pr_xi = std::max(phi_pr_xi, std::abs(on_xi(printed, tm) - on_xi(l_phi, tm)));

    double route_gap = std::max(max_gap(l_g, l_g_cov), max_gap(l_phi, l_phi_cov));
    double route_scale = std::max({base, max_abs(l_g), max_abs(l_phi)});

    if (einstein && para_sasakian) {
      const TensorJet& S = pg.curvature().ricci;
      const TensorValue l_s = values(lie_derivative(S, xi, pg.conn));
      const TensorValue l_s_cov = values(lie_derivative(S, xi, pg.conn, LieRoute::Covariant));
      route_gap = std::max(route_gap, max_gap(l_s, l_s_cov));
      route_scale = std::max(route_scale, max_abs(l_s));
      for (const auto& m : all_members) {
        const auto& k = m.k;
        const TensorValue want = combo(tm, Phi, 2.0 * k.b * e, 2.0 * k.a * e, -2.0 * k.b);
        ws.add(max_gap(l_s, want), std::max({base, max_abs(l_s), max_abs(want)}));
      }
      if (constant && !members.empty()) {
        const TensorValue l_c = values(lie_derivative(compute_c11_phi_r(pg), xi, pg.conn));
        for (const auto& m : members) {
          const auto& k = m.k;
          const double first = 2.0 * e * k.b / k.c * (k.c + n - 1);
          const double second = 2.0 * e * (k.a - e * (n - 2));
          const TensorValue d = combo(tm, Phi, second, first, -e * second);
          const TensorValue q = combo(tm, Phi, second, first, -second);
          const double s = std::max({base, max_abs(l_c), max_abs(d)});
          wc.add(max_gap(l_c, d), s);
          wc_pr.add(max_gap(l_c, q), s);
          const double xg = std::abs(on_xi(q, tm) - on_xi(l_c, tm));
          c_pr_xi = std::max(c_pr_xi, xg);
          if (m.label == "t=0") c_pr_xi_min = std::max(c_pr_xi_min, xg);
        }
      }
    }
    routes.add(route_gap, route_scale);
  }

  r.add(make_record(id_routes, an_routes, routes.value, opt.tol.third));
  if (!para_sasakian) {
    not_applicable(r, {{id_eta, an_eta}, {id_g, an_g}, {id_phi, an_phi}, {id_phi_pr, an_phi_pr},
                       {id_s, an_s}, {id_c, an_c}, {id_c_pr, an_c_pr}},
                   kNotPs);
    return r;
  }
  r.add(make_record(id_eta, an_eta, weta.value, opt.tol.first));
  r.add(make_record(id_g, an_g, wg.value, opt.tol.first));
  r.add(make_record(id_phi, an_phi, wphi.value, opt.tol.first));
  r.add(make_printed_record(id_phi_pr, an_phi_pr, wphi_pr.value, opt.tol.first,
                            "gap on (xi, xi): " + format_number(phi_pr_xi)));
  if (!einstein) {
    not_applicable(r, {{id_s, an_s}, {id_c, an_c}, {id_c_pr, an_c_pr}}, kNotEinstein);
    return r;
  }
  r.add(make_record(id_s, an_s, ws.value, opt.tol.third, "all family members"));
  if (!constant) {
    not_applicable(r, {{id_c, an_c}, {id_c_pr, an_c_pr}}, kTraceVaries);
  } else if (members.empty()) {
    const std::string why = "every family member has degenerate c: " + skipped;
    r.add(make_status_record(id_c, an_c, CheckStatus::Vacuous, why));
    r.add(make_status_record(id_c_pr, an_c_pr, CheckStatus::Vacuous, why));
  } else {
    r.add(make_record(id_c, an_c, wc.value, opt.tol.third));
    r.add(make_printed_record(id_c_pr, an_c_pr, wc_pr.value, opt.tol.third,
                              xi_gap_note(c_pr_xi_min, c_pr_xi)));
  }
  return r;
}

}  // namespace paracontact
