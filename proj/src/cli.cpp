#include "paracontact/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "paracontact/manifest.hpp"
#include "paracontact/report.hpp"
#include "paracontact/suite.hpp"

namespace paracontact {

namespace {

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
};

void add_output(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out_path, "write the report to this file");
}

void add_sampling(CLI::App* cmd, SuiteConfig& c) {
  cmd->add_option("--points", c.points, "sample points")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
  cmd->add_option("--tol-scale", c.tol_scale, "multiply every tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

int emit(const CheckReport& r, const OutputOptions& o, std::ostream& out) {
  const std::string body = o.format == "text" ? report_text(r) : report_json(r);
  if (o.out_path.empty()) {
    out << body;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + o.out_path);
    f << body;
    out << r.checks.size() << " checks written to " << o.out_path << ", exit "
        << r.exit_code() << "\n";
  }
  return r.exit_code();
}

ModelSource resolve(const std::string& name) {
  if (auto f = find_builtin(name)) return f->source;
  if (std::filesystem::exists(name)) return load_manifest(name);
  throw std::invalid_argument("unknown model '" + name +
                              "' (not a builtin and no such manifest file)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of (eps)-para Sasakian geometry", "paracheck"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-models", "list builtin models and bundles");

  SuiteConfig check_cfg;
  OutputOptions check_out;
  std::string check_model;
  auto* check = app.add_subcommand("check", "run a check suite on a model or manifest");
  check->add_option("model", check_model, "builtin name or manifest path")->required();
  check->add_option("--suite", check_cfg.suite, "suite name")->capture_default_str();
  add_sampling(check, check_cfg);
  add_output(check, check_out);

  SuiteConfig hyp_cfg;
  OutputOptions hyp_out;
  std::string hyp_model;
  std::string hyp_part = "all";
  auto* hyp = app.add_subcommand("hypersurface", "run the hypersurface suite on a bundle");
  hyp->add_option("bundle", hyp_model, "builtin bundle name or manifest path")->required();
  hyp->add_option("--suite", hyp_part, "induced, gauss, characterization or all")
      ->check(CLI::IsMember(hypersurface_parts()))
      ->capture_default_str();
  add_sampling(hyp, hyp_cfg);
  add_output(hyp, hyp_out);

  SyntheticOptions syn;
  OutputOptions syn_out;
  std::string syn_eps = "+1";
  double syn_tol_scale = 1.0;
  auto* synth = app.add_subcommand("synthetic", "pointwise Gauss-equation check on random models");
  synth->add_option("--epsilon", syn_eps, "+1 or -1")
      ->check(CLI::IsMember({"+1", "1", "-1"}))
      ->capture_default_str();
  synth->add_option("--dim", syn.n, "hypersurface dimension n >= 3")->capture_default_str();
  synth->add_option("--trials", syn.trials, "random models")->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--seed", syn.seed, "master seed")->capture_default_str();
  synth->add_option("--perturb-a", syn.perturb_a, "perturb the planted shape operator")
      ->capture_default_str();
  synth->add_option("--tol-scale", syn_tol_scale, "multiply the check tolerances")
      ->check(CLI::PositiveNumber);
  add_output(synth, syn_out);

  std::string export_model, export_path;
  auto* exp = app.add_subcommand("export", "write a builtin model as a manifest");
  exp->add_option("model", export_model, "builtin name")->required();
  exp->add_option("--out", export_path, "manifest path (stdout when absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*list) {
      for (const auto& f : builtin_models()) {
        out << f.name << "\t" << (f.is_bundle() ? "bundle" : "chart") << "\t"
            << (f.negative_control ? "negative-control" : "fixture") << "\t" << f.description
            << "\n";
      }
      return 0;
    }
    if (*check) return emit(run_suite(resolve(check_model), check_cfg), check_out, out);
    if (*hyp) {
      const ModelSource m = resolve(hyp_model);
      const auto* b = std::get_if<HypersurfaceBundle>(&m);
      if (!b) throw std::invalid_argument("'" + hyp_model + "' is not a hypersurface bundle");
      return emit(run_hypersurface(*b, hyp_part, hyp_cfg), hyp_out, out);
    }
    if (*synth) {
      syn.epsilon = syn_eps == "-1" ? -1 : 1;
      syn.check.seed = syn.seed;
      syn.check.tol = Tolerances{}.scaled(syn_tol_scale);
      return emit(run_synthetic(syn), syn_out, out);
    }
    if (*exp) {
      auto f = find_builtin(export_model);
      if (!f) throw std::invalid_argument("unknown builtin '" + export_model + "'");
      const std::string text = save_manifest(f->source);
      if (export_path.empty()) {
        out << text;
      } else {
        std::ofstream file(export_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + export_path);
        file << text;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace paracontact
