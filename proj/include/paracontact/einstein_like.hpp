// Einstein-like decomposition S = a g + b Phi + c eta(x)eta and its
// consequences for para-Sasakian manifolds.
#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paracontact/checks.hpp"
#include "paracontact/structure.hpp"

namespace paracontact {

struct Coefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct FamilyMember {
  std::string label;
  Coefficients k;
};

struct EinsteinSample {
  std::vector<double> point;
  TensorValue g, Phi, eta, S;
};

struct EinsteinLikeFit {
  Coefficients coeffs;  // minimum-norm solution
  double residual = 0.0;  // max componentwise |S - (a g + b Phi + c eta eta)|
  double scale = 0.0;     // max component magnitude of the fitted inputs
  int gram_rank = 0;
  std::array<double, 3> singular_values{};
  /// Nullspace basis; each direction has its first significant component = +1.
  std::vector<std::array<double, 3>> family;
  std::size_t samples = 0;

  double normalized_residual() const { return residual / (1.0 + scale); }
  bool einstein_like(double tol) const { return normalized_residual() <= tol; }
  Coefficients member(double t, std::size_t direction = 0) const;
  /// The minimum-norm solution and t in {-1, 0, 1} along every family direction.
  std::vector<FamilyMember> members() const;
};

class FitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

EinsteinSample einstein_sample(const PointGeometry& pg);

/// Rank-aware least squares in (a, b, c). Samples are sorted by point
/// coordinates before stacking so the result is independent of input order.
EinsteinLikeFit fit_einstein_like(std::vector<EinsteinSample> samples);
EinsteinLikeFit fit_einstein_like(std::span<const PointGeometry> pts);

/// C11(phi R)(Y, Z) = trace(X -> phi R(X, Y) Z), jet-valued (0,2).
TensorJet compute_c11_phi_r(const PointGeometry& pg);

/// Coefficients of C11 in the basis (g, Phi, eta eta).
struct C11Coefficients {
  double g = 0.0;
  double Phi = 0.0;
  double eta_eta = 0.0;
};
C11Coefficients c11_coefficients_derived(const Coefficients& k, int n, int epsilon);
C11Coefficients c11_coefficients_printed(const Coefficients& k, int n, int epsilon);

/// Both sides of b xi(r) - 2 c r = 2 eps (1 - n)(b^2 - c^2 - c n).
struct OdeSides {
  double lhs = 0.0;
  double rhs = 0.0;
};
OdeSides scalar_ode_sides(const Coefficients& k, const PointGeometry& pg);

double trace_phi(const PointGeometry& pg);

// The verification functions gate on their preconditions and report
// not-applicable records (note "precondition failed: ...") when they fail.
StructureCheckResult verify_einstein_fit(const EinsteinLikeFit& fit,
                                         std::span<const PointGeometry> pts,
                                         const CheckOptions& opt);
StructureCheckResult verify_coefficient_constraints(const EinsteinLikeFit& fit,
                                                    std::span<const PointGeometry> pts,
                                                    const CheckOptions& opt, bool para_sasakian);
StructureCheckResult verify_scalar_ode(const EinsteinLikeFit& fit,
                                       std::span<const PointGeometry> pts,
                                       const CheckOptions& opt, bool para_sasakian);
StructureCheckResult verify_trace_formula(const EinsteinLikeFit& fit,
                                          std::span<const PointGeometry> pts,
                                          const CheckOptions& opt, bool para_sasakian);
StructureCheckResult verify_c11_decomposition(const EinsteinLikeFit& fit,
                                              std::span<const PointGeometry> pts,
                                              const CheckOptions& opt, bool para_sasakian);
StructureCheckResult verify_lie_formulas(const EinsteinLikeFit& fit,
                                         std::span<const PointGeometry> pts,
                                         const CheckOptions& opt, bool para_sasakian);

}  // namespace paracontact
