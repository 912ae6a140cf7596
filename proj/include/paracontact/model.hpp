// Chart presentation of a manifold with an optional paracontact structure.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paracontact/expr.hpp"
#include "paracontact/structure.hpp"

namespace paracontact {

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ManifoldModel {
  std::string name;
  std::string description;
  int dim = 0;
  std::vector<std::string> coords;
  int epsilon = 1;
  std::optional<int> index;
  std::vector<ScalarExpr> metric;  // row-major n x n
  std::vector<ScalarExpr> phi;     // row-major n x n, phi[i*n + j] = phi^i_j; empty if absent
  std::vector<ScalarExpr> xi;      // n components or empty
  std::vector<ScalarExpr> eta;     // n components or empty
  std::vector<Interval> domain;

  bool has_structure() const { return !phi.empty(); }

  /// Shape checks, symmetric metric as written, non-empty domain. Throws
  /// ValidationError naming the violated invariant.
  void validate_shape() const;
};

class ExpressionStructure final : public ParacontactStructure {
 public:
  explicit ExpressionStructure(ManifoldModel model);

  const std::string& name() const override { return model_.name; }
  int dim() const override { return model_.dim; }
  int epsilon() const override { return model_.epsilon; }
  std::optional<int> declared_index() const override { return model_.index; }
  const std::vector<Interval>& domain() const override { return model_.domain; }
  /// Models without a structure report zero phi, xi and eta.
  StructureJets evaluate(std::span<const double> point, int order) const override;

  const ManifoldModel& model() const { return model_; }

 private:
  ManifoldModel model_;
};

/// Jets of a row-major n x n expression array as a tensor of the given valence.
TensorJet expression_tensor(const std::vector<ScalarExpr>& entries, int n, Valence v,
                            std::span<const Jet> args);

}  // namespace paracontact
