// Acceptance harness: one line per criterion, nonzero exit when any is red.
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "paracontact/cli.hpp"
#include "paracontact/einstein_like.hpp"
#include "paracontact/hypersurface.hpp"
#include "paracontact/model.hpp"
#include "paracontact/report.hpp"
#include "paracontact/suite.hpp"
#include "paracontact/synthetic.hpp"

using namespace paracontact;
using testing_support::bundle;
using testing_support::chart;

namespace {

constexpr int kPoints = 100;

struct Verdict {
  bool ok = true;
  std::vector<std::string> details;

  void expect(bool cond, const std::string& what) {
    if (!cond) ok = false;
    details.push_back((cond ? "" : "!") + what);
  }
};

std::string num(double v) { return format_number(v); }

std::vector<PointGeometry> geometry(const char* name, int points = kPoints) {
  const ExpressionStructure s(chart(name));
  return analyze_points(s, sample_points(s, points, 42));
}

double record_residual(const CheckReport& r, const std::string& id) {
  const CheckRecord* c = r.find(id);
  return c ? c->residual : INFINITY;
}

std::vector<double> vec(const TensorValue& t) { return {t.data().begin(), t.data().end()}; }

// All seven axioms below 1e-9 and the para-Sasakian equations below 1e-8.
Verdict structure_suite() {
  Verdict v;
  for (const char* name : {"E1-3", "E2-3"}) {
    SuiteConfig cfg;
    cfg.suite = "sasakian";
    const CheckReport ps = run_suite(find_builtin(name)->source, cfg);
    cfg.suite = "structure";
    const CheckReport ax = run_suite(find_builtin(name)->source, cfg);
    double worst_ax = 0, worst_ps = 0;
    int axioms = 0;
    for (const auto& c : ax.checks) {
      if (c.id.rfind("axioms.", 0) == 0) {
        ++axioms;
        worst_ax = std::max(worst_ax, c.residual);
      }
    }
    for (const char* id : {"sasakian.nabla_phi", "sasakian.nabla_xi", "sasakian.Phi_nabla_eta"}) {
      worst_ps = std::max(worst_ps, record_residual(ps, id));
    }
    v.expect(axioms == 7 && worst_ax < 1e-9,
             std::string(name) + " axioms " + std::to_string(axioms) + " max " + num(worst_ax));
    v.expect(worst_ps < 1e-8, std::string(name) + " ps max " + num(worst_ps));
  }
  return v;
}

Verdict curvature_golden() {
  Verdict v;
  for (const auto& [name, sign] : {std::pair{"E1-3", -1.0}, std::pair{"E2-3", 1.0}}) {
    const ExpressionStructure s(chart(name));
    const auto geoms = geometry(name);
    double r_gap = 0, s_gap = 0;
    for (const auto& pg : geoms) {
      r_gap = std::max(r_gap, std::abs(pg.curvature().scalar.value() - 6.0 * sign));
      s_gap = std::max(s_gap, max_abs(pg.ricci - (2.0 * sign) * pg.tm.g));
    }
    double fd_gap = 0;
    const oracle::MetricFn g = testing_support::metric_fn(s);
    for (int i = 0; i < 10; ++i) {
      const auto& pg = geoms[i];
      const Eigen::MatrixXd fd = oracle::ricci(g, pg.point);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) fd_gap = std::max(fd_gap, std::abs(fd(a, b) - pg.ricci(a, b)));
      }
    }
    v.expect(r_gap < 1e-6, std::string(name) + " |r - " + num(6 * sign) + "| " + num(r_gap));
    v.expect(s_gap < 1e-7, std::string(name) + " |S - " + num(2 * sign) + "g| " + num(s_gap));
    v.expect(fd_gap < 1e-4, std::string(name) + " fd oracle " + num(fd_gap));
  }
  return v;
}

Verdict convention_lock() {
  Verdict v;
  for (const char* name : {"E1-3", "E2-3"}) {
    SuiteConfig cfg;
    cfg.suite = "curvature";
    const CheckReport r = run_suite(find_builtin(name)->source, cfg);
    const double sx = record_residual(r, "ps_curvature.S_xi");
    const double rx = record_residual(r, "ps_curvature.R_xi");
    v.expect(sx < 1e-7, std::string(name) + " S(Y,xi) " + num(sx));
    v.expect(rx < 1e-7, std::string(name) + " R(X,Y)xi " + num(rx));
  }
  return v;
}

Verdict einstein_fit() {
  Verdict v;
  const auto geoms = geometry("E1-3");
  const EinsteinLikeFit fit = fit_einstein_like(geoms);
  v.expect(fit.gram_rank == 2, "rank " + std::to_string(fit.gram_rank));
  const double d = std::max({std::abs(fit.coeffs.a + 4.0 / 3), std::abs(fit.coeffs.b - 2.0 / 3),
                             std::abs(fit.coeffs.c + 2.0 / 3)});
  v.expect(d < 1e-8, "min-norm (" + num(fit.coeffs.a) + ", " + num(fit.coeffs.b) + ", " +
                         num(fit.coeffs.c) + ")");
  double fd = INFINITY;
  if (fit.family.size() == 1) {
    const auto& f = fit.family[0];
    fd = std::max({std::abs(f[0] - 1), std::abs(f[1] - 1), std::abs(f[2] + 1)});
  }
  v.expect(fd < 1e-8, "family direction gap " + num(fd));
  double cg = 0;
  for (const auto& m : fit.members()) cg = std::max(cg, std::abs(m.k.a + m.k.c + 2.0));
  v.expect(cg < 1e-9, "eps a + c = -2 gap " + num(cg));
  return v;
}

Verdict scalar_ode() {
  Verdict v;
  const auto geoms = geometry("E1-3");
  const EinsteinLikeFit fit = fit_einstein_like(geoms);
  double gap = 0, div = 0;
  for (const auto& pg : geoms) {
    const OdeSides s = scalar_ode_sides(fit.coeffs, pg);
    gap = std::max({gap, std::abs(s.lhs + 8.0), std::abs(s.rhs + 8.0)});
    div = std::max(div, max_abs(pg.curvature().div_q));
  }
  v.expect(gap < 1e-8, "both sides -8, gap " + num(gap));
  v.expect(div < 1e-7, "div Q " + num(div));
  return v;
}

Verdict trace_formula() {
  Verdict v;
  const auto geoms = geometry("E1-3");
  const EinsteinLikeFit fit = fit_einstein_like(geoms);
  double tg = 0;
  for (const auto& pg : geoms) tg = std::max(tg, std::abs(trace_phi(pg) + 2.0));
  v.expect(tg < 1e-8, "trace phi = -2, gap " + num(tg));
  double fg = 0;
  int used = 0;
  for (const auto& m : fit.members()) {
    if (std::abs(m.k.c) < 1e-6) continue;
    ++used;
    fg = std::max(fg, std::abs(1.0 * (3 - 1) * m.k.b / m.k.c + 2.0));
  }
  v.expect(used > 0 && fg < 1e-8,
           "eps(n-1)b/c = -2 over " + std::to_string(used) + " members, gap " + num(fg));
  return v;
}

Verdict c11() {
  Verdict v;
  const auto geoms = geometry("E1-3");
  double gap = 0;
  for (const auto& pg : geoms) {
    const TensorValue c = values(compute_c11_phi_r(pg));
    gap = std::max(gap, max_abs(c - (pg.tm.g + tensor_product(pg.tm.eta, pg.tm.eta))));
  }
  v.expect(gap < 1e-7, "C11 = g + eta eta, gap " + num(gap));
  const EinsteinLikeFit fit = fit_einstein_like(geoms);
  const auto res = verify_c11_decomposition(fit, geoms, CheckOptions{}, true);
  const double disp = res.at("c11.S_Y_phiZ").residual;
  const double sym = res.at("c11.symmetric").residual;
  const double par = res.at("c11.parallel_xi").residual;
  v.expect(disp < 1e-8, "S(Y, phi Z) display " + num(disp));
  v.expect(sym < 1e-9, "symmetry " + num(sym));
  v.expect(par < 1e-7, "nabla_xi C11 " + num(par));
  return v;
}

Verdict adjudication() {
  Verdict v;
  {
    const auto geoms = geometry("E1-3");
    const EinsteinLikeFit fit = fit_einstein_like(geoms);
    const auto res = verify_c11_decomposition(fit, geoms, CheckOptions{}, true);
    const CheckRecord& derived = res.at("c11.decomposition");
    const CheckRecord& printed = res.at("c11.decomposition.printed");
    v.expect(derived.status == CheckStatus::Pass && derived.residual < 1e-7,
             "derived C11 form " + num(derived.residual));
    // printed coefficients against the computed C11 on (xi, xi)
    const C11Coefficients p = c11_coefficients_printed(fit.coeffs, 3, 1);
    double miss = 0;
    for (const auto& pg : geoms) {
      const auto xi = vec(pg.tm.xi);
      const TensorValue c = values(compute_c11_phi_r(pg));
      const double pr = p.g * bilinear(pg.tm.g, xi, xi) + p.eta_eta * std::pow(pair(pg.tm.eta, xi), 2);
      miss = std::max(miss, std::abs(bilinear(c, xi, xi) - pr));
    }
    v.expect(printed.status == CheckStatus::PrintedFormMismatch && std::abs(miss - 1.0 / 3) < 1e-6,
             "printed C11 form " + std::string(to_string(printed.status)) + ", miss " + num(miss));
  }
  {
    const auto geoms = geometry("E2-3");
    double derived = 0, printed = 0;
    for (const auto& pg : geoms) {
      const TensorValue lie = values(lie_derivative(pg.Phi, pg.jets.xi, pg.conn));
      const TensorValue ee = tensor_product(pg.tm.eta, pg.tm.eta);
      const double eps = pg.epsilon();
      derived = std::max(derived, max_abs(lie - (2 * eps) * (pg.tm.g - eps * ee)));
      const auto xi = vec(pg.tm.xi);
      const TensorValue pr = (2 * eps) * (pg.tm.g - ee);
      printed = std::max(printed, std::abs(bilinear(lie, xi, xi) - bilinear(pr, xi, xi)));
    }
    v.expect(derived < 1e-8, "E2 L_xi Phi derived " + num(derived));
    v.expect(std::abs(printed - 4.0) < 1e-8, "E2 printed miss on eta eta " + num(printed));
  }
  return v;
}

Verdict hypersurface_suite() {
  Verdict v;
  SuiteConfig cfg;
  {
    const CheckReport r = run_hypersurface(bundle("E3a"), "induced", cfg);
    double ax = 0;
    for (const auto& c : r.checks) {
      if (c.id.rfind("axioms.", 0) == 0) ax = std::max(ax, c.residual);
    }
    const InducedStructure s(bundle("E3a"));
    double a = 0;
    for (const auto& sd : shape_operator(s, sample_points(s, kPoints, 42))) a = std::max(a, max_abs(sd.A));
    v.expect(ax < 1e-9 && !r.any_failed(), "E3a axioms " + num(ax));
    v.expect(a < 1e-9, "E3a |A| " + num(a));
  }
  const InducedStructure s(bundle("E3b"));
  const CheckReport r = run_hypersurface(bundle("E3b"), "induced", cfg);
  double ax = 0, der = 0;
  for (const auto& c : r.checks) {
    if (c.id.rfind("axioms.", 0) == 0) ax = std::max(ax, c.residual);
    if (c.id.rfind("induced.nabla", 0) == 0) der = std::max(der, c.residual);
  }
  v.expect(ax < 1e-9, "E3b axioms " + num(ax));
  v.expect(der < 1e-7, "E3b induced derivatives " + num(der));
  // principal curvatures scale as 1/t; the golden values sit on t = 1
  auto rng = make_rng(42, "acceptance-cone");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double eg = 0;
  for (int i = 0; i < 20; ++i) {
    const ShapeData sd = shape_operator(s, std::vector<double>{1.0, u(rng), u(rng)});
    Eigen::MatrixXd m(3, 3);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) m(a, b) = sd.A(a, b);
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    std::vector<double> ev;
    for (int a = 0; a < 3; ++a) {
      eg = std::max(eg, std::abs(es.eigenvalues()(a).imag()));
      ev.push_back(es.eigenvalues()(a).real());
    }
    std::sort(ev.begin(), ev.end());
    eg = std::max({eg, std::abs(ev[0] + std::sqrt(0.5)), std::abs(ev[1]), std::abs(ev[2] - std::sqrt(0.5))});
  }
  v.expect(eg < 1e-6, "E3b eigenvalues {-1/sqrt2, 0, 1/sqrt2}, gap " + num(eg));
  const auto pts = sample_points(s, kPoints, 42);
  const auto geoms = analyze_points(s, pts, kDefaultJetOrder, false);
  const auto shapes = shape_operator(s, pts);
  const CheckOptions opt;
  const auto ch = check_ps_characterization(geoms, shapes, opt);
  const double floor = 10 * opt.tol.first;
  const double r1 = *std::min_element(ch.rho1.begin(), ch.rho1.end());
  const double r2 = *std::min_element(ch.rho2.begin(), ch.rho2.end());
  v.expect(ch.result.at("characterization.iff").status == CheckStatus::Pass && r1 > floor && r2 > floor,
           "iff with both sides false, min rho1 " + num(r1) + ", min rho2 " + num(r2));
  return v;
}

Verdict synthetic_gauss() {
  Verdict v;
  for (int eps : {1, -1}) {
    for (int n : {3, 5}) {
      SyntheticOptions o;
      o.epsilon = eps;
      o.n = n;
      o.trials = 100;
      const SyntheticGaussResult r = synthetic_gauss_check(o);
      double kgap = 0, kmin = INFINITY, kmax = -INFINITY;
      for (double k : r.k_recovered) {
        kgap = std::max(kgap, std::abs(k - (2 - eps)));
        kmin = std::min(kmin, k);
        kmax = std::max(kmax, k);
      }
      const std::string tag = "(" + std::string(eps > 0 ? "+1" : "-1") + "," + std::to_string(n) + ") ";
      v.expect(kgap < 1e-10, tag + "k = 2-eps gap " + num(kgap) + ", recovered k in [" + num(kmin) +
                                 ", " + num(kmax) + "]");
      v.expect(r.ricci_printed_gap < 1e-10, tag + "printed Ricci gap " + num(r.ricci_printed_gap));
      v.expect(r.quasi_umbilical_gap < 1e-12, tag + "quasi-umbilical gap " + num(r.quasi_umbilical_gap));
    }
  }
  return v;
}

Verdict negative_controls() {
  Verdict v;
  SuiteConfig cfg;
  cfg.points = 10;
  cfg.suite = "structure";
  v.expect(run_suite(find_builtin("N1")->source, cfg).exit_code() == 1, "N1 structure exit 1");
  cfg.suite = "curvature";
  const CheckRecord* rx = run_suite(find_builtin("F0")->source, cfg).find("ps_curvature.R_xi");
  v.expect(rx && rx->status == CheckStatus::Fail, "F0 R(X,Y)xi fails");
  SyntheticOptions o;
  o.trials = 10;
  o.perturb_a = 0.1;
  const auto pert = synthetic_gauss_check(o);
  v.expect(pert.result.at("hypersurface.quasi_umbilical").status == CheckStatus::Fail,
           "perturbed A fails quasi-umbilical");
  const std::vector<std::string> candidates = {"N1", "F0", "E3b-flip", "E3b"};
  for (const auto& suite : suite_names()) {
    std::string failing;
    if (suite == "synthetic") {
      o.perturb_a = 0.1;
      if (run_synthetic(o).any_failed()) failing = "perturbed synthetic";
    } else {
      for (const auto& name : candidates) {
        const ModelSource m = find_builtin(name)->source;
        if (suite == "hypersurface" && !std::holds_alternative<HypersurfaceBundle>(m)) continue;
        cfg.suite = suite;
        if (run_suite(m, cfg).any_failed()) {
          failing = name;
          break;
        }
      }
    }
    v.expect(!failing.empty(), suite + " fails on " + (failing.empty() ? "nothing" : failing));
  }
  return v;
}

Verdict determinism() {
  Verdict v;
  SuiteConfig cfg;
  cfg.points = 20;
  for (const char* name : {"E1-3", "E3b"}) {
    const ModelSource m = find_builtin(name)->source;
    v.expect(report_json(run_suite(m, cfg)) == report_json(run_suite(m, cfg)),
             std::string(name) + " reports identical");
  }
  SyntheticOptions o;
  o.trials = 10;
  v.expect(report_json(run_synthetic(o)) == report_json(run_synthetic(o)), "synthetic reports identical");
  const auto path = (std::filesystem::temp_directory_path() / "acceptance_bad_manifest.json").string();
  std::ofstream(path) << "{\n  \"name\": \"bad\",\n  \"dim\": 3,\n  \"coords\": [\"x\" \"y\"]\n}\n";
  const char* argv[] = {"paracheck", "check", path.c_str()};
  std::ostringstream out, err;
  const int code = run_cli(3, argv, out, err);
  const bool located = err.str().find(path + ":4:") != std::string::npos;
  v.expect(code == 2 && located, "malformed manifest exit " + std::to_string(code) +
                                     (located ? " with line:col" : " without position"));
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"structure suite on E1/E2", structure_suite},
      {"curvature golden values", curvature_golden},
      {"convention lock", convention_lock},
      {"Einstein-like fit on E1", einstein_fit},
      {"scalar curvature ODE on E1", scalar_ode},
      {"trace formula", trace_formula},
      {"C11(phi R) on E1", c11},
      {"printed-form adjudication", adjudication},
      {"hypersurface suite", hypersurface_suite},
      {"synthetic Gauss check", synthetic_gauss},
      {"negative controls", negative_controls},
      {"determinism and interface", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    if (!v.ok) ++failed;
    std::string detail;
    for (const auto& d : v.details) detail += (detail.empty() ? "" : "; ") + d;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, v.ok ? "PASS" : "FAIL", criteria[i].first.c_str(),
                detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
