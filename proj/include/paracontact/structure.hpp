// (epsilon)-almost paracontact metric structures, per-point geometry and the
// structure-level checks (axioms, para-Sasakian equations, curvature
// identities of para-Sasakian manifolds).
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paracontact/checks.hpp"
#include "paracontact/geometry.hpp"
#include "paracontact/tensor.hpp"

namespace paracontact {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct StructureJets {
  TensorJet g;    // (0,2)
  TensorJet phi;  // (1,1)
  TensorJet xi;   // (1,0)
  TensorJet eta;  // (0,1)
  int epsilon = 1;
};

class ParacontactStructure {
 public:
  virtual ~ParacontactStructure() = default;

  virtual const std::string& name() const = 0;
  virtual int dim() const = 0;
  virtual int epsilon() const = 0;
  virtual std::optional<int> declared_index() const = 0;
  virtual const std::vector<Interval>& domain() const = 0;
  /// Jets of (g, phi, xi, eta) at a chart point, all of the given order.
  virtual StructureJets evaluate(std::span<const double> point, int order) const = 0;
};

/// Numeric structure data at one point; the input to all pointwise algebra.
struct TangentModel {
  int n = 0;
  int epsilon = 1;
  TensorValue g;      // (0,2)
  TensorValue g_inv;  // (2,0)
  TensorValue phi;    // (1,1)
  TensorValue xi;     // (1,0)
  TensorValue eta;    // (0,1)

  /// Phi(X, Y) = g(phi X, Y).
  TensorValue fundamental_form() const;
  double scale() const;
};

struct PointGeometry {
  std::vector<double> point;
  StructureJets jets;
  TangentModel tm;
  ConnectionAtPoint conn;
  TensorJet Phi;        // (0,2) jets
  TensorJet nabla_phi;  // (1,2): nabla_phi(i, j, m) = ((nabla_m phi) d_j)^i
  TensorJet nabla_xi;   // (1,1): nabla_xi(i, m) = (nabla_m xi)^i
  TensorJet nabla_eta;  // (0,2): nabla_eta(j, m) = (nabla_m eta)_j
  std::optional<CurvatureAtPoint> curv;
  TensorValue riemann;  // (1,3) values, empty without curvature
  TensorValue ricci;    // (0,2) values

  int dim() const { return tm.n; }
  int epsilon() const { return tm.epsilon; }
  const CurvatureAtPoint& curvature() const;
};

constexpr int kDefaultJetOrder = 4;

PointGeometry analyze_point(const ParacontactStructure& s, std::span<const double> point,
                            int order = kDefaultJetOrder, bool with_curvature = true);

/// Uniform samples in the domain box, reproducible from the seed.
std::vector<std::vector<double>> sample_points(const ParacontactStructure& s, int count,
                                               std::uint64_t seed);

std::vector<PointGeometry> analyze_points(const ParacontactStructure& s,
                                          const std::vector<std::vector<double>>& points,
                                          int order = kDefaultJetOrder,
                                          bool with_curvature = true);

// Pointwise evaluation helpers.
/// (nabla_X T) Y for a (1,2) derivative array of a (1,1) field.
std::vector<double> apply_derivative11(const TensorValue& dt, std::span<const double> x,
                                       std::span<const double> y);
/// R(X, Y) Z from (1,3) values.
std::vector<double> apply_curvature(const TensorValue& r, std::span<const double> x,
                                    std::span<const double> y, std::span<const double> z);

StructureCheckResult check_axioms(std::span<const PointGeometry> pts, const CheckOptions& opt);
StructureCheckResult check_para_sasakian(std::span<const PointGeometry> pts,
                                         const CheckOptions& opt);
/// Runs regardless of the para-Sasakian status; records carry a warning note
/// when the structure is known not to be para-Sasakian.
StructureCheckResult check_ps_curvature_identities(std::span<const PointGeometry> pts,
                                                   const CheckOptions& opt,
                                                   bool para_sasakian = true);
/// Structure-free invariants of the Levi-Civita connection and its curvature.
StructureCheckResult check_curvature_invariants(std::span<const PointGeometry> pts,
                                                const CheckOptions& opt);

}  // namespace paracontact
