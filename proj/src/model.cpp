#include "paracontact/model.hpp"

#include <string>

namespace paracontact {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

void ManifoldModel::validate_shape() const {
  const auto n = static_cast<std::size_t>(dim);
  require(dim >= 1, "dim must be positive");
  require(coords.size() == n, "coords must list " + std::to_string(dim) + " names");
  require(epsilon == 1 || epsilon == -1, "epsilon must be +1 or -1");
  require(metric.size() == n * n, "metric must have dim*dim entries");
  require(phi.empty() || phi.size() == n * n, "phi must have dim*dim entries");
  require(phi.empty() == xi.empty() && phi.empty() == eta.empty(),
          "phi, xi and eta must be given together");
  require(xi.empty() || xi.size() == n, "xi must have dim entries");
  require(eta.empty() || eta.size() == n, "eta must have dim entries");
  require(domain.size() == n, "domain must have dim intervals");
  for (std::size_t i = 0; i < n; ++i) {
    require(domain[i].lo <= domain[i].hi, "domain interval for '" + coords[i] + "' is empty");
    for (std::size_t j = i + 1; j < n; ++j) {
      require(metric[i * n + j] == metric[j * n + i],
              "metric is not symmetric as written at (" + coords[i] + ", " + coords[j] + ")");
    }
  }
  require(!index || (*index >= 0 && *index <= dim), "index must lie in [0, dim]");
}

TensorJet expression_tensor(const std::vector<ScalarExpr>& entries, int n, Valence v,
                            std::span<const Jet> args) {
  TensorJet t(n, v, args[0].constant(0.0));
  for (std::size_t f = 0; f < t.size(); ++f) t[f] = entries[f].compose(args);
  return t;
}

ExpressionStructure::ExpressionStructure(ManifoldModel model) : model_(std::move(model)) {
  model_.validate_shape();
}

StructureJets ExpressionStructure::evaluate(std::span<const double> point, int order) const {
  const int n = model_.dim;
  const std::vector<Jet> args = coordinate_jets(point, order);
  StructureJets s;
  s.epsilon = model_.epsilon;
  s.g = expression_tensor(model_.metric, n, {0, 2}, args);
  const Jet zero = args[0].constant(0.0);
  if (!model_.has_structure()) {
    s.phi = TensorJet(n, {1, 1}, zero);
    s.xi = TensorJet(n, {1, 0}, zero);
    s.eta = TensorJet(n, {0, 1}, zero);
    return s;
  }
  s.phi = expression_tensor(model_.phi, n, {1, 1}, args);
  s.xi = expression_tensor(model_.xi, n, {1, 0}, args);
  s.eta = expression_tensor(model_.eta, n, {0, 1}, args);
  return s;
}

}  // namespace paracontact
