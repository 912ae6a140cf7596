// Hypersurfaces of indefinite almost product manifolds: the induced
// structure, Gauss-Weingarten data and the shape-operator characterization of
// para-Sasakian hypersurfaces.
#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paracontact/checks.hpp"
#include "paracontact/expr.hpp"
#include "paracontact/structure.hpp"

namespace paracontact {

struct AmbientProductModel {
  std::string name;
  int dim = 0;  // n + 1
  std::vector<std::string> coords;
  std::vector<ScalarExpr> metric;  // row-major
  std::vector<ScalarExpr> J;       // row-major, J[a*dim + b] = J^a_b
  std::optional<double> k;         // almost-constant-curvature constant, when declared

  void validate_shape() const;
  TensorJet metric_jets(std::span<const Jet> args) const;
  TensorJet J_jets(std::span<const Jet> args) const;
};

struct Embedding {
  std::vector<std::string> coords;  // n chart coordinates
  std::vector<ScalarExpr> map;      // n + 1 ambient components
  int orientation = 1;
  std::vector<Interval> domain;
};

struct HypersurfaceBundle {
  std::string name;
  std::string description;
  AmbientProductModel ambient;
  Embedding embedding;
  std::optional<int> index;    // declared index of the induced metric
  std::optional<int> epsilon;  // declared g(N, N); measured when absent

  void validate_shape() const;
};

class TangencyError : public std::runtime_error {
 public:
  TangencyError(std::vector<double> point, double measured);
  const std::vector<double>& point() const { return point_; }
  double measured() const { return measured_; }

 private:
  std::vector<double> point_;
  double measured_;
};

class LightlikeNormalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Jets (in chart variables) of the embedding data at one chart point.
struct InducedFrame {
  std::vector<Jet> position;             // F^a, order K + 1
  std::vector<std::vector<Jet>> tangent;  // tangent[i][a] = d_i F^a, order K
  TensorJet ambient_g;                   // ambient metric along F, dimension n + 1
  TensorJet ambient_J;
  std::vector<Jet> normal;  // unit normal, oriented
  double normal_sign = 1.0;  // measured g(N, N)
  double tangency = 0.0;     // |g(JN, N)| at the point
};

constexpr double kTangencyTolerance = 1e-8;
constexpr double kLightlikeThreshold = 1e-6;

class InducedStructure final : public ParacontactStructure {
 public:
  explicit InducedStructure(HypersurfaceBundle bundle);

  const std::string& name() const override { return bundle_.name; }
  int dim() const override { return static_cast<int>(bundle_.embedding.coords.size()); }
  /// Declared epsilon, or the sign measured at the domain center.
  int epsilon() const override { return epsilon_; }
  std::optional<int> declared_index() const override { return bundle_.index; }
  const std::vector<Interval>& domain() const override { return bundle_.embedding.domain; }
  /// Throws TangencyError when JN is not tangent at the point.
  StructureJets evaluate(std::span<const double> point, int order) const override;

  InducedFrame frame(std::span<const double> point, int order) const;
  const HypersurfaceBundle& bundle() const { return bundle_; }

 private:
  HypersurfaceBundle bundle_;
  int epsilon_ = 1;
};

struct ShapeData {
  std::vector<double> point;
  TangentModel tm;         // induced structure at the point
  TensorValue A;           // (1,1) shape operator
  TensorValue h;           // (0,2) from the Gauss formula
  std::vector<double> N;   // ambient components of the unit normal
  double normal_sign = 1;  // measured g(N, N)
  double tangency = 0.0;
  TensorValue ambient_riemann;  // (0,4) ambient curvature at F(point)
  std::vector<std::vector<double>> tangent;  // ambient components of d_i F
  TensorValue ambient_g;
  TensorValue ambient_J;
  TensorValue ambient_nabla_J;  // (1,2) at F(point)
};

ShapeData shape_operator(const InducedStructure& s, std::span<const double> point);
std::vector<ShapeData> shape_operator(const InducedStructure& s,
                                      const std::vector<std::vector<double>>& points);

/// Ambient invariants at the embedded sample points: J^2 = I, g(JX, JY) = g,
/// nabla J = 0 and the declared curvature ansatz.
StructureCheckResult check_ambient(std::span<const ShapeData> shapes, const CheckOptions& opt,
                                   std::optional<double> k);
/// Normal consistency, tangency of JN, self-adjointness of A and h = eps g(A., .).
StructureCheckResult check_shape_data(std::span<const ShapeData> shapes, int declared_epsilon,
                                      const CheckOptions& opt);

StructureCheckResult verify_induced_derivatives(std::span<const PointGeometry> pts,
                                                std::span<const ShapeData> shapes,
                                                const CheckOptions& opt);

/// Ambient curvature ansatz k{g g - g g + g(J.,.) g(J.,.) - g(J.,.) g(J.,.)} in (0,4) form.
TensorValue almost_constant_curvature(const TensorValue& g, const TensorValue& J, double k);

/// Intrinsic curvature equals the restricted ambient curvature plus the
/// eps (A wedge A) term.
StructureCheckResult check_gauss_consistency(std::span<const PointGeometry> pts,
                                             std::span<const ShapeData> shapes,
                                             const CheckOptions& opt);

/// Gap of (nabla_X phi)Y = eta(Y)AX + eps g(AX,Y)xi against the
/// para-Sasakian right side, normalized.
double ps_gap_from_shape(const TangentModel& tm, const TensorValue& A, const CheckOptions& opt,
                         std::uint64_t stream);
/// Normalized max |A + eps I - eps eta(x)xi|.
double shape_gap(const TangentModel& tm, const TensorValue& A);
/// -eps I + eps eta(x)xi.
TensorValue para_sasakian_shape(const TangentModel& tm);
/// h(X, Y) = eps g(AX, Y).
TensorValue second_fundamental_form(const TangentModel& tm, const TensorValue& A);

struct ConstructiveInverse {
  TensorValue A;
  int rank = 0;
  int unknowns = 0;
  double residual = 0.0;  // normalized gap to -eps I + eps eta(x)xi
};
/// Solve eta(Y)AX + eps g(AX,Y)xi = -g(phi X, phi Y)xi - eps eta(Y)phi^2 X
/// for A over at least n^2 random pairs.
ConstructiveInverse solve_shape_from_ps(const TangentModel& tm, std::mt19937_64& rng);

struct CharacterizationResult {
  StructureCheckResult result;
  std::vector<double> rho1;  // para-Sasakian gap from intrinsic nabla phi
  std::vector<double> rho2;  // shape-operator gap
};
CharacterizationResult check_ps_characterization(std::span<const PointGeometry> pts,
                                                 std::span<const ShapeData> shapes,
                                                 const CheckOptions& opt);

/// h = -g + eps eta(x)eta. Gated on the shape operator having the
/// para-Sasakian form unless assume_ps is set (planted synthetic models).
CheckRecord quasi_umbilical_check(std::span<const TangentModel> tms,
                                  std::span<const TensorValue> shape_ops,
                                  std::span<const TensorValue> second_forms,
                                  const CheckOptions& opt, bool assume_ps = false);

}  // namespace paracontact
