// Manifest files: a JSON document describing a chart model or a hypersurface
// bundle, with expression strings in the chart grammar.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "paracontact/model.hpp"
#include "paracontact/models.hpp"

namespace paracontact {

class ManifestParseError : public std::runtime_error {
 public:
  ManifestParseError(std::string source, std::size_t line, std::size_t column,
                     const std::string& detail);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Declared index disagrees with the computed inertia of the metric.
class IndexMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

constexpr int kManifestValidationPoints = 10;

/// Parses and validates; `source` names the document in diagnostics.
ModelSource parse_manifest(std::string_view text, const std::string& source = "<manifest>");
ModelSource load_manifest(const std::filesystem::path& path);
std::string save_manifest(const ModelSource& model);

/// Shape checks plus metric non-degeneracy and declared index at
/// kManifestValidationPoints random domain points.
void validate_model(const ModelSource& model);

bool same_model(const ModelSource& a, const ModelSource& b);

}  // namespace paracontact
