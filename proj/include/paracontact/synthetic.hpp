// Pointwise Gauss-equation algebra for para-Sasakian hypersurfaces of
// ambients of almost constant curvature, on random tangent-space models.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "paracontact/checks.hpp"
#include "paracontact/structure.hpp"

namespace paracontact {

/// Random (epsilon)-almost paracontact metric data at one point: adapted frame
/// (xi, D+, D-) with random signs, moved by a well-conditioned basis change.
struct RandomTangentModel {
  TangentModel tm;
  int plus_dim = 0;   // dimension of the +1 eigenspace of phi
  int resampled = 0;  // basis changes rejected as ill-conditioned
};

RandomTangentModel random_tangent_model(std::mt19937_64& rng, int n, int epsilon);

/// Ambient tangent model on T M + span(N): G = g + eps N*N, J X = phi X + eta(X) N, J N = xi.
struct AmbientTangent {
  TensorValue G;  // (0,2), dimension n + 1, N is the last basis vector
  TensorValue J;  // (1,1)
};
AmbientTangent ambient_tangent(const TangentModel& tm);

/// (0,4) curvature of the hypersurface from the Gauss equation with the
/// ambient ansatz at constant k and shape operator A.
TensorValue gauss_curvature(const TangentModel& tm, const TensorValue& A, double k);

/// Closed forms in the basis {g g}, {Phi Phi}, B (all (0,4)):
/// derived: (k + eps){g g} + k{Phi Phi} - B; printed: (k - 1){g g} + k{Phi Phi} - eps B.
TensorValue derived_gauss_display(const TangentModel& tm, double k);
TensorValue printed_gauss_display(const TangentModel& tm, double k);

/// S(Y, Z) = trace(X -> R(X, Y)Z) from (0,4) components.
TensorValue ricci_from_dddd(const TangentModel& tm, const TensorValue& r);

struct KSolve {
  double k = 0.0;
  double residual = 0.0;  // normalized least-squares residual of R(X,Y)xi = eta(X)Y - eta(Y)X
  double slope = 0.0;     // size of the k-coefficient; zero means k is not determined
};
/// Least squares in k for a curvature affine in k, given at k = 0 and k = 1.
KSolve solve_k(const TangentModel& tm, const TensorValue& r_at_0, const TensorValue& r_at_1);

struct SyntheticOptions {
  int epsilon = 1;
  int n = 3;
  int trials = 100;
  std::uint64_t seed = 42;
  double perturb_a = 0.0;  // size of a g-self-adjoint perturbation of the planted A
  CheckOptions check;
};

struct SyntheticGaussResult {
  StructureCheckResult result;
  std::vector<double> k_recovered;  // per trial, from the Gauss equation
  std::vector<double> k_printed_display;  // per trial, from the printed display
  double ricci_printed_gap = 0.0;   // max normalized gap of the printed Ricci at k = 2 - eps
  double quasi_umbilical_gap = 0.0;
  int resampled = 0;
};

SyntheticGaussResult synthetic_gauss_check(const SyntheticOptions& opt);

}  // namespace paracontact
