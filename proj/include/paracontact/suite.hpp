// Suite orchestration and check reports.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "paracontact/checks.hpp"
#include "paracontact/models.hpp"
#include "paracontact/synthetic.hpp"

namespace paracontact {

inline constexpr std::string_view kEngineVersion = "0.1.0";

class UnknownSuiteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
  std::string suite = "all";
  int points = 100;
  std::uint64_t seed = 42;
  double tol_scale = 1.0;
  int vectors = 20;
};

struct CheckReport {
  std::string model;
  std::string suite;
  std::uint64_t seed = 42;
  int points = 0;
  std::string engine_version{kEngineVersion};
  std::vector<CheckRecord> checks;  // sorted by id

  bool any_failed() const;
  /// 0 when no check failed, 1 otherwise.
  int exit_code() const { return any_failed() ? 1 : 0; }
  const CheckRecord* find(std::string_view id) const;
};

const std::vector<std::string>& suite_names();
const std::vector<std::string>& hypersurface_parts();

/// Runs a named suite. For hypersurface bundles, the chart suites run on the
/// induced structure and "hypersurface" runs every part; "hypersurface:<part>"
/// selects one of induced, gauss or characterization.
CheckReport run_suite(const ModelSource& model, const SuiteConfig& config);
CheckReport run_hypersurface(const HypersurfaceBundle& bundle, std::string_view part,
                             const SuiteConfig& config);
CheckReport run_synthetic(const SyntheticOptions& options);

}  // namespace paracontact
