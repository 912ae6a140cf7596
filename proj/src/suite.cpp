#include "paracontact/suite.hpp"

#include <algorithm>
#include <memory>
#include <set>

#include "paracontact/einstein_like.hpp"
#include "paracontact/hypersurface.hpp"
#include "paracontact/structure.hpp"

namespace paracontact {

namespace {

CheckOptions options_for(const SuiteConfig& c) {
  if (c.points < 1) throw std::invalid_argument("points must be at least 1");
  if (!(c.tol_scale > 0.0)) throw std::invalid_argument("tol-scale must be positive");
  CheckOptions o;
  o.tol = Tolerances{}.scaled(c.tol_scale);
  o.vectors = c.vectors;
  o.seed = c.seed;
  return o;
}

void finish(CheckReport& r, const StructureCheckResult& res) {
  std::set<std::string> seen;
  for (const auto& rec : res.records) {
    if (seen.insert(rec.id).second) r.checks.push_back(rec);
  }
  std::stable_sort(r.checks.begin(), r.checks.end(),
                   [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
}

bool needs_curvature(std::string_view suite) {
  return suite == "curvature" || suite == "einstein" || suite == "lie" || suite == "all";
}

StructureCheckResult chart_suite(const ParacontactStructure& s, std::string_view suite,
                                 const SuiteConfig& config, const CheckOptions& opt) {
  const auto points = sample_points(s, config.points, config.seed);
  const auto geoms = analyze_points(s, points, kDefaultJetOrder, needs_curvature(suite));
  const bool all = suite == "all";
  StructureCheckResult out;
  if (all || suite == "structure") out.append(check_axioms(geoms, opt));
  StructureCheckResult sasakian;
  if (suite != "structure") sasakian = check_para_sasakian(geoms, opt);
  const bool ps = sasakian.passed();
  // Einstein-like and Lie checks are gated on these, so they travel with them.
  if (suite == "sasakian" || suite == "einstein" || suite == "lie" || all) out.append(sasakian);
  if (all || suite == "curvature") {
    out.append(check_curvature_invariants(geoms, opt));
    out.append(check_ps_curvature_identities(geoms, opt, ps));
  }
  if (all || suite == "einstein" || suite == "lie") {
    const EinsteinLikeFit fit = fit_einstein_like(geoms);
    if (all || suite == "einstein") {
      out.append(verify_einstein_fit(fit, geoms, opt));
      out.append(verify_coefficient_constraints(fit, geoms, opt, ps));
      out.append(verify_scalar_ode(fit, geoms, opt, ps));
      out.append(verify_trace_formula(fit, geoms, opt, ps));
      out.append(verify_c11_decomposition(fit, geoms, opt, ps));
    }
    if (all || suite == "lie") out.append(verify_lie_formulas(fit, geoms, opt, ps));
  }
  return out;
}

StructureCheckResult hypersurface_records(const HypersurfaceBundle& bundle, std::string_view part,
                                          const SuiteConfig& config, const CheckOptions& opt) {
  const InducedStructure s(bundle);
  const auto points = sample_points(s, config.points, config.seed);
  const bool all = part == "all";
  const bool gauss = all || part == "gauss";
  const auto geoms = analyze_points(s, points, kDefaultJetOrder, gauss);
  const auto shapes = shape_operator(s, points);
  const int declared = bundle.epsilon ? *bundle.epsilon : s.epsilon();

  StructureCheckResult out;
  if (all || part == "induced" || gauss) out.append(check_ambient(shapes, opt, bundle.ambient.k));
  if (all || part == "induced") {
    out.append(check_axioms(geoms, opt));
    out.append(check_shape_data(shapes, declared, opt));
    out.append(verify_induced_derivatives(geoms, shapes, opt));
  }
  if (gauss) out.append(check_gauss_consistency(geoms, shapes, opt));
  if (all || part == "characterization") {
    out.append(check_ps_characterization(geoms, shapes, opt).result);
    std::vector<TangentModel> tms;
    std::vector<TensorValue> as, hs;
    for (const auto& sd : shapes) {
      tms.push_back(sd.tm);
      as.push_back(sd.A);
      hs.push_back(sd.h);
    }
    out.add(quasi_umbilical_check(tms, as, hs, opt));
  }
  return out;
}

std::string model_name(const ModelSource& m) {
  return std::visit([](const auto& x) { return x.name; }, m);
}

}  // namespace

bool CheckReport::any_failed() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const CheckRecord& r) { return r.status == CheckStatus::Fail; });
}

const CheckRecord* CheckReport::find(std::string_view id) const {
  for (const auto& r : checks) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"structure", "sasakian",     "curvature",
                                                 "einstein",  "lie",          "hypersurface",
                                                 "synthetic", "all"};
  return names;
}

const std::vector<std::string>& hypersurface_parts() {
  static const std::vector<std::string> parts = {"induced", "gauss", "characterization", "all"};
  return parts;
}

CheckReport run_hypersurface(const HypersurfaceBundle& bundle, std::string_view part,
                             const SuiteConfig& config) {
  const auto& parts = hypersurface_parts();
  if (std::find(parts.begin(), parts.end(), part) == parts.end()) {
    throw UnknownSuiteError("unknown hypersurface suite '" + std::string(part) +
                            "' (expected induced, gauss, characterization or all)");
  }
  const CheckOptions opt = options_for(config);
  CheckReport r;
  r.model = bundle.name;
  r.suite = part == "all" ? "hypersurface" : "hypersurface:" + std::string(part);
  r.seed = config.seed;
  r.points = config.points;
  finish(r, hypersurface_records(bundle, part, config, opt));
  return r;
}

CheckReport run_synthetic(const SyntheticOptions& options) {
  const SyntheticGaussResult res = synthetic_gauss_check(options);
  CheckReport r;
  r.model = "synthetic(eps=" + std::string(options.epsilon > 0 ? "+1" : "-1") +
            ",n=" + std::to_string(options.n) + ")";
  r.suite = "synthetic";
  r.seed = options.seed;
  r.points = options.trials;
  finish(r, res.result);
  return r;
}

CheckReport run_suite(const ModelSource& model, const SuiteConfig& config) {
  const std::string& suite = config.suite;
  std::string part = "all";
  std::string base = suite;
  if (suite.rfind("hypersurface:", 0) == 0) {
    base = "hypersurface";
    part = suite.substr(std::string("hypersurface:").size());
  }
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), base) == names.end()) {
    throw UnknownSuiteError("unknown suite '" + suite + "'");
  }
  const CheckOptions opt = options_for(config);
  const auto* bundle = std::get_if<HypersurfaceBundle>(&model);

  if (base == "synthetic") {
    SyntheticOptions so;
    std::unique_ptr<ParacontactStructure> s;
    if (bundle) {
      s = std::make_unique<InducedStructure>(*bundle);
    } else {
      s = std::make_unique<ExpressionStructure>(std::get<ManifoldModel>(model));
    }
    so.epsilon = s->epsilon();
    so.n = s->dim();
    so.trials = config.points;
    so.seed = config.seed;
    so.check = opt;
    CheckReport r = run_synthetic(so);
    r.model = model_name(model);
    return r;
  }
  if (base == "hypersurface") {
    if (!bundle) {
      throw UnknownSuiteError("suite 'hypersurface' needs a hypersurface bundle, '" +
                              model_name(model) + "' is a chart model");
    }
    CheckReport r = run_hypersurface(*bundle, part, config);
    r.suite = suite;
    return r;
  }

  CheckReport r;
  r.model = model_name(model);
  r.suite = suite;
  r.seed = config.seed;
  r.points = config.points;
  StructureCheckResult res;
  if (bundle) {
    const InducedStructure s(*bundle);
    res = chart_suite(s, suite, config, opt);
    if (suite == "all") res.append(hypersurface_records(*bundle, "all", config, opt));
  } else {
    const ExpressionStructure s(std::get<ManifoldModel>(model));
    res = chart_suite(s, suite, config, opt);
  }
  finish(r, res);
  return r;
}

}  // namespace paracontact
