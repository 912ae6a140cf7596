#include "paracontact/synthetic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "paracontact/einstein_like.hpp"
#include "paracontact/hypersurface.hpp"

namespace paracontact {

namespace {

constexpr double kSyntheticTol = 1e-10;
constexpr double kPlantedTol = 1e-12;
constexpr double kMaxCondition = 10.0;

using Vec = std::vector<double>;

double max_gap(const TensorValue& a, const TensorValue& b) {
  double gap = 0.0;
  for (std::size_t f = 0; f < a.size(); ++f) gap = std::max(gap, std::abs(a[f] - b[f]));
  return gap;
}

// {g g}(i,j,k,l) = b(j,k)b(i,l) - b(i,k)b(j,l) for a (0,2) array b.
TensorValue wedge_square(const TensorValue& b) {
  const int n = b.dim();
  TensorValue r(n, {0, 4}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) r(i, j, k, l) = b(j, k) * b(i, l) - b(i, k) * b(j, l);
      }
    }
  }
  return r;
}

// g(Y,Z)eta(X)eta(W) + eta(Y)eta(Z)g(X,W) - g(X,Z)eta(Y)eta(W) - eta(X)eta(Z)g(Y,W)
TensorValue eta_terms(const TangentModel& tm) {
  const int n = tm.n;
  const auto& g = tm.g;
  const auto& e = tm.eta;
  TensorValue r(n, {0, 4}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          r(i, j, k, l) = g(j, k) * e[i] * e[l] + e[j] * e[k] * g(i, l) -
                          g(i, k) * e[j] * e[l] - e[i] * e[k] * g(j, l);
        }
      }
    }
  }
  return r;
}

TensorValue eta_eta(const TangentModel& tm) {
  TensorValue r(tm.n, {0, 2}, 0.0);
  for (int i = 0; i < tm.n; ++i) {
    for (int j = 0; j < tm.n; ++j) r(i, j) = tm.eta[i] * tm.eta[j];
  }
  return r;
}

TensorValue combine(const TangentModel& tm, const Coefficients& k) {
  return tm.g * k.a + tm.fundamental_form() * k.b + eta_eta(tm) * k.c;
}

double trace11(const TensorValue& t) {
  double s = 0.0;
  for (int i = 0; i < t.dim(); ++i) s += t(i, i);
  return s;
}

// Least squares S = a g + b Phi + c eta(x)eta.
Coefficients fit_coefficients(const TangentModel& tm, const TensorValue& S) {
  const int n = tm.n;
  const TensorValue Phi = tm.fundamental_form();
  const TensorValue ee = eta_eta(tm);
  Eigen::MatrixXd M(n * n, 3);
  Eigen::VectorXd rhs(n * n);
  for (int f = 0; f < n * n; ++f) {
    M(f, 0) = tm.g[f];
    M(f, 1) = Phi[f];
    M(f, 2) = ee[f];
    rhs(f) = S[f];
  }
  const Eigen::Vector3d x = M.completeOrthogonalDecomposition().solve(rhs);
  return {x(0), x(1), x(2)};
}

Coefficients derived_ricci(int n, int eps, double trphi, double k) {
  return {(k + eps) * (n - 2), k * trphi, k * eps - n + 2};
}

Coefficients printed_ricci(int n, int eps, double trphi) {
  const double k = 2.0 - eps;
  return {k * (n - 2) - n, k * trphi, eps * (4.0 - eps - n)};
}

struct Max {
  double v = 0.0;
  void add(double x) { v = std::max(v, x); }
};

}  // namespace

RandomTangentModel random_tangent_model(std::mt19937_64& rng, int n, int epsilon) {
  RandomTangentModel out;
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const int p = pick(rng);
  out.plus_dim = p;

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(n, n);
  g(0, 0) = epsilon;
  for (int i = 1; i < n; ++i) {
    g(i, i) = coin(rng) ? 1.0 : -1.0;
    phi(i, i) = i <= p ? 1.0 : -1.0;
  }
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(n);
  xi(0) = 1.0;
  Eigen::RowVectorXd eta = Eigen::RowVectorXd::Zero(n);
  eta(0) = 1.0;

  Eigen::MatrixXd P(n, n);
  for (;;) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) P(i, j) = unit(rng);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(P);
    const auto& s = svd.singularValues();
    if (s(n - 1) > 0.0 && s(0) / s(n - 1) <= kMaxCondition) break;
    ++out.resampled;
  }
  const Eigen::MatrixXd Pinv = P.inverse();
  const Eigen::MatrixXd g2 = P.transpose() * g * P;
  const Eigen::MatrixXd phi2 = Pinv * phi * P;
  const Eigen::VectorXd xi2 = Pinv * xi;
  const Eigen::RowVectorXd eta2 = eta * P;

  TangentModel& tm = out.tm;
  tm.n = n;
  tm.epsilon = epsilon;
  tm.g = TensorValue(n, {0, 2}, 0.0);
  tm.g_inv = TensorValue(n, {2, 0}, 0.0);
  tm.phi = TensorValue(n, {1, 1}, 0.0);
  tm.xi = TensorValue(n, {1, 0}, 0.0);
  tm.eta = TensorValue(n, {0, 1}, 0.0);
  const Eigen::MatrixXd ginv = g2.inverse();
  for (int i = 0; i < n; ++i) {
    tm.xi[i] = xi2(i);
    tm.eta[i] = eta2(i);
    for (int j = 0; j < n; ++j) {
      // Symmetrize away rounding so the metric is exactly symmetric.
      tm.g(i, j) = 0.5 * (g2(i, j) + g2(j, i));
      tm.g_inv(i, j) = 0.5 * (ginv(i, j) + ginv(j, i));
      tm.phi(i, j) = phi2(i, j);
    }
  }
  return out;
}

AmbientTangent ambient_tangent(const TangentModel& tm) {
  const int n = tm.n;
  const int m = n + 1;
  AmbientTangent a{TensorValue(m, {0, 2}, 0.0), TensorValue(m, {1, 1}, 0.0)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a.G(i, j) = tm.g(i, j);
      a.J(i, j) = tm.phi(i, j);
    }
    a.J(n, i) = tm.eta[i];
    a.J(i, n) = tm.xi[i];
  }
  a.G(n, n) = tm.epsilon;
  return a;
}

TensorValue gauss_curvature(const TangentModel& tm, const TensorValue& A, double k) {
  const int n = tm.n;
  const AmbientTangent amb = ambient_tangent(tm);
  const TensorValue rt = almost_constant_curvature(amb.G, amb.J, k);
  TensorValue ga = second_fundamental_form(tm, A);
  ga *= static_cast<double>(tm.epsilon);  // g(A., .)
  const TensorValue aa = wedge_square(ga);
  TensorValue r(n, {0, 4}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < n; ++p) {
        for (int l = 0; l < n; ++l) r(i, j, p, l) = rt(i, j, p, l) + tm.epsilon * aa(i, j, p, l);
      }
    }
  }
  return r;
}

TensorValue derived_gauss_display(const TangentModel& tm, double k) {
  return wedge_square(tm.g) * (k + tm.epsilon) + wedge_square(tm.fundamental_form()) * k -
         eta_terms(tm);
}

TensorValue printed_gauss_display(const TangentModel& tm, double k) {
  return wedge_square(tm.g) * (k - 1.0) + wedge_square(tm.fundamental_form()) * k -
         eta_terms(tm) * static_cast<double>(tm.epsilon);
}

TensorValue ricci_from_dddd(const TangentModel& tm, const TensorValue& r) {
  const int n = tm.n;
  TensorValue s(n, {0, 2}, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int l = 0; l < n; ++l) acc += tm.g_inv(i, l) * r(i, j, k, l);
      }
      s(j, k) = acc;
    }
  }
  return s;
}

KSolve solve_k(const TangentModel& tm, const TensorValue& r_at_0, const TensorValue& r_at_1) {
  const int n = tm.n;
  // R(d_i, d_j)xi as vectors; d = R0 xi - target, s = (R1 - R0) xi.
  Vec d, s;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        double v0 = 0.0, v1 = 0.0;
        for (int k = 0; k < n; ++k) {
          for (int m = 0; m < n; ++m) {
            const double w = tm.xi[k] * tm.g_inv(m, l);
            v0 += r_at_0(i, j, k, m) * w;
            v1 += r_at_1(i, j, k, m) * w;
          }
        }
        const double target = tm.eta[i] * (j == l ? 1.0 : 0.0) - tm.eta[j] * (i == l ? 1.0 : 0.0);
        d.push_back(v0 - target);
        s.push_back(v1 - v0);
      }
    }
  }
  double ds = 0.0, ss = 0.0;
  for (std::size_t f = 0; f < d.size(); ++f) {
    ds += d[f] * s[f];
    ss += s[f] * s[f];
  }
  KSolve out;
  out.slope = std::sqrt(ss);
  if (ss == 0.0) {
    out.residual = normalized(max_abs(d), tm.scale());
    return out;
  }
  out.k = -ds / ss;
  double gap = 0.0;
  for (std::size_t f = 0; f < d.size(); ++f) gap = std::max(gap, std::abs(d[f] + out.k * s[f]));
  out.residual = normalized(gap, tm.scale());
  return out;
}

SyntheticGaussResult synthetic_gauss_check(const SyntheticOptions& opt) {
  const int n = opt.n;
  const int eps = opt.epsilon;
  if (n < 3) throw std::invalid_argument("synthetic check needs dim >= 3");
  if (eps != 1 && eps != -1) throw std::invalid_argument("epsilon must be +1 or -1");
  if (opt.trials < 1) throw std::invalid_argument("trials must be at least 1");
  const double k_printed = 2.0 - eps;

  SyntheticGaussResult out;
  Max ambient_j, derived_display, printed_display, k_residual, k_derived, k_print, k_from_printed,
      ricci_derived, ricci_printed, ricci_internal, eac_derived, eac_printed, trace_derived,
      trace_printed, planted, inverse;
  double min_slope = INFINITY;
  int min_rank_gap = 0;
  int trace_printed_degenerate = 0;
  std::vector<TangentModel> tms;
  std::vector<TensorValue> shapes, forms;

  for (int t = 0; t < opt.trials; ++t) {
    auto rng = make_rng(opt.seed, "synthetic", static_cast<std::uint64_t>(t));
    const RandomTangentModel rm = random_tangent_model(rng, n, eps);
    out.resampled += rm.resampled;
    const TangentModel& tm = rm.tm;
    const double scale = tm.scale();
    const TensorValue A = para_sasakian_shape(tm);

    const AmbientTangent amb = ambient_tangent(tm);
    const TensorValue j2 = compose11(amb.J, amb.J);
    double jgap = max_gap(j2, identity(n + 1));
    for (int a = 0; a <= n; ++a) {
      for (int b = 0; b <= n; ++b) {
        double v = 0.0;
        for (int c = 0; c <= n; ++c) {
          for (int d = 0; d <= n; ++d) v += amb.J(c, a) * amb.J(d, b) * amb.G(c, d);
        }
        jgap = std::max(jgap, std::abs(v - amb.G(a, b)));
      }
    }
    ambient_j.add(normalized(jgap, scale));

    for (double k : {0.0, 1.0, 2.0, 3.0}) {
      const TensorValue r = gauss_curvature(tm, A, k);
      const double rs = std::max(scale, max_abs(r));
      derived_display.add(normalized(max_gap(r, derived_gauss_display(tm, k)), rs));
      printed_display.add(normalized(max_gap(r, printed_gauss_display(tm, k)), rs));
    }

    const KSolve ks = solve_k(tm, gauss_curvature(tm, A, 0.0), gauss_curvature(tm, A, 1.0));
    out.k_recovered.push_back(ks.k);
    k_residual.add(ks.residual);
    min_slope = std::min(min_slope, ks.slope);
    k_derived.add(std::abs(ks.k + eps));
    k_print.add(std::abs(ks.k - k_printed));
    const KSolve kp =
        solve_k(tm, printed_gauss_display(tm, 0.0), printed_gauss_display(tm, 1.0));
    out.k_printed_display.push_back(kp.k);
    k_from_printed.add(std::max(std::abs(kp.k - k_printed), kp.residual));

    const double trphi = trace11(tm.phi);
    const TensorValue s_derived = ricci_from_dddd(tm, gauss_curvature(tm, A, ks.k));
    const double ss = std::max(scale, max_abs(s_derived));
    ricci_derived.add(
        normalized(max_gap(s_derived, combine(tm, derived_ricci(n, eps, trphi, ks.k))), ss));
    const Coefficients pr = printed_ricci(n, eps, trphi);
    const TensorValue s_at_printed_k = ricci_from_dddd(tm, gauss_curvature(tm, A, k_printed));
    const double gp = normalized(max_gap(s_at_printed_k, combine(tm, pr)),
                                 std::max(scale, max_abs(s_at_printed_k)));
    ricci_printed.add(gp);
    out.ricci_printed_gap = std::max(out.ricci_printed_gap, gp);
    const TensorValue s_internal = ricci_from_dddd(tm, printed_gauss_display(tm, k_printed));
    ricci_internal.add(normalized(max_gap(s_internal, combine(tm, pr)),
                                  std::max(scale, max_abs(s_internal))));

    const Coefficients fit = fit_coefficients(tm, s_derived);
    const double cs = 1.0 + std::abs(fit.a) + std::abs(fit.c) + n;
    eac_derived.add(std::abs(eps * fit.a + fit.c - (1.0 - n)) / cs);
    eac_printed.add(std::abs(eps * pr.a + pr.c - (1.0 - n)) /
                    (1.0 + std::abs(pr.a) + std::abs(pr.c) + n));
    const double ts = 1.0 + std::abs(trphi);
    if (std::abs(fit.c) > 1e-12) {
      trace_derived.add(std::abs(eps * (n - 1) * fit.b / fit.c - trphi) / ts);
    } else {
      trace_derived.add(INFINITY);
    }
    if (std::abs(pr.c) > 1e-12) {
      trace_printed.add(std::abs(eps * (n - 1) * pr.b / pr.c - trphi) / ts);
    } else {
      ++trace_printed_degenerate;
    }

    TensorValue A_used = A;
    if (opt.perturb_a != 0.0) {
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      TensorValue sym(n, {0, 2}, 0.0);
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) sym(i, j) = sym(j, i) = unit(rng);
      }
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double v = 0.0;
          for (int m = 0; m < n; ++m) v += tm.g_inv(i, m) * sym(m, j);
          A_used(i, j) += opt.perturb_a * v;
        }
      }
    }
    planted.add(ps_gap_from_shape(tm, A_used, opt.check, static_cast<std::uint64_t>(t)));
    const ConstructiveInverse ci = solve_shape_from_ps(tm, rng);
    inverse.add(ci.residual);
    min_rank_gap = std::max(min_rank_gap, ci.unknowns - ci.rank);
    tms.push_back(tm);
    shapes.push_back(A_used);
    forms.push_back(second_fundamental_form(tm, A_used));
  }

  auto& r = out.result;
  const std::string setting = "eps = " + std::to_string(eps) + ", n = " + std::to_string(n) +
                              ", trials = " + std::to_string(opt.trials) +
                              ", ill-conditioned bases resampled = " +
                              std::to_string(out.resampled);
  r.add(make_record("gauss.ambient_J", "ambient J X = phi X + eta(X)N, J N = xi is an almost product structure",
                    ambient_j.v, kSyntheticTol));
  r.add(make_record("gauss.derived_display",
                    "Gauss equation: R = (k + eps){g g} + k{Phi Phi} - {eta terms}",
                    derived_display.v, kSyntheticTol, "compared at k = 0, 1, 2, 3"));
  r.add(make_printed_record("gauss.printed_display",
                            "printed Gauss display: R = (k - 1){g g} + k{Phi Phi} - eps{eta terms}",
                            printed_display.v, kSyntheticTol, "compared at k = 0, 1, 2, 3"));
  {
    std::string note = setting + ", least squares in k";
    if (!(min_slope > 1e-12)) note += ", k not determined (zero slope)";
    const double res = min_slope > 1e-12 ? k_residual.v : INFINITY;
    r.add(make_record("gauss.k_unique", "R(X,Y)xi = eta(X)Y - eta(Y)X determines k", res,
                      kSyntheticTol, note));
  }
  const auto [klo, khi] = std::minmax_element(out.k_recovered.begin(), out.k_recovered.end());
  const std::string krange = "recovered k in [" + format_number(*klo) + ", " +
                             format_number(*khi) + "]";
  r.add(make_record("gauss.k_derived", "k = -eps from the Gauss equation", k_derived.v,
                    kSyntheticTol, krange));
  r.add(make_printed_record("gauss.k_printed", "printed value k = 2 - eps", k_print.v,
                            kSyntheticTol, krange + ", printed " + format_number(k_printed)));
  r.add(make_record("gauss.k_from_printed_display", "printed Gauss display yields k = 2 - eps",
                    k_from_printed.v, kSyntheticTol));
  r.add(make_record("gauss.ricci_derived",
                    "S = (k + eps)(n - 2)g + k trace(phi)Phi + (k eps - n + 2)eta(x)eta",
                    ricci_derived.v, kSyntheticTol, "at the recovered k"));
  r.add(make_printed_record(
      "gauss.ricci_printed",
      "printed Ricci: S = ((2 - eps)(n - 2) - n)g + (2 - eps)trace(phi)Phi + eps(4 - eps - n)eta(x)eta",
      ricci_printed.v, kSyntheticTol, "Gauss equation evaluated at k = 2 - eps"));
  r.add(make_record("gauss.ricci_printed_internal",
                    "printed Ricci is the trace of the printed Gauss display at k = 2 - eps",
                    ricci_internal.v, kSyntheticTol));
  r.add(make_record("gauss.eps_a_plus_c", "Einstein-like constants: eps a + c = 1 - n",
                    eac_derived.v, kSyntheticTol, "constants fitted from the Gauss Ricci tensor"));
  r.add(make_record("gauss.eps_a_plus_c.printed",
                    "printed Ricci constants satisfy eps a + c = 1 - n", eac_printed.v,
                    kSyntheticTol));
  r.add(make_record("gauss.trace_formula", "trace(phi) = eps(n - 1)b/c", trace_derived.v,
                    kSyntheticTol, "constants fitted from the Gauss Ricci tensor"));
  if (trace_printed_degenerate == opt.trials) {
    r.add(make_status_record("gauss.trace_formula.printed",
                             "trace(phi) = eps(n - 1)b/c with the printed constants",
                             CheckStatus::Vacuous, "printed c = eps(4 - eps - n) vanishes"));
  } else {
    r.add(make_printed_record("gauss.trace_formula.printed",
                              "trace(phi) = eps(n - 1)b/c with the printed constants",
                              trace_printed.v, kSyntheticTol));
  }
  r.add(make_record("characterization.planted",
                    "A = -eps I + eps eta(x)xi makes the induced nabla phi para-Sasakian",
                    planted.v, kPlantedTol,
                    opt.perturb_a != 0.0 ? "A perturbed by " + format_number(opt.perturb_a)
                                         : std::string{}));
  if (min_rank_gap > 0) {
    r.add(CheckRecord{"characterization.constructive_inverse",
                      "forward direction: the nabla phi display forces A", inverse.v, kSyntheticTol,
                      CheckStatus::Fail, "linear system rank deficient"});
  } else {
    r.add(make_record("characterization.constructive_inverse",
                      "forward direction: the nabla phi display forces A", inverse.v,
                      kSyntheticTol));
  }
  CheckOptions qopt = opt.check;
  CheckRecord q = quasi_umbilical_check(tms, shapes, forms, qopt, true);
  out.quasi_umbilical_gap = q.residual;
  r.add(std::move(q));
  return out;
}

}  // namespace paracontact
