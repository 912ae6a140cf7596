#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "paracontact/tensor.hpp"

namespace paracontact {

class DegenerateMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric metric at a point with its inverse, determinant and index.
class MetricAtPoint {
 public:
  /// Validates symmetry (1e-12 relative) and non-degeneracy; when
  /// declared_index is given, the inertia must match it.
  static MetricAtPoint from(const TensorValue& g, std::optional<int> declared_index = {});

  const TensorValue& g() const { return g_; }
  const TensorValue& g_inv() const { return g_inv_; }
  int index() const { return index_; }
  double det() const { return det_; }
  int dim() const { return g_.dim(); }

  /// Eigenvalue signs in ascending eigenvalue order (the frame signs e_i).
  const std::vector<int>& signs() const { return signs_; }

  double inner(std::span<const double> x, std::span<const double> y) const {
    return bilinear(g_, x, y);
  }
  std::vector<double> lower(std::span<const double> v) const;
  std::vector<double> raise(std::span<const double> w) const;

 private:
  TensorValue g_;
  TensorValue g_inv_;
  int index_ = 0;
  double det_ = 0.0;
  std::vector<int> signs_;
};

/// Inverse of a square jet matrix stored as a rank-2 tensor, via Gauss-Jordan
/// elimination pivoting on constant terms. Valence is swapped (0,2)->(2,0).
TensorJet inverse_metric(const TensorJet& g);

/// Symmetric eigen-decomposition count of negative eigenvalues.
int inertia_index(const TensorValue& g);

/// Gram-Schmidt with signature signs: returns vectors e_i with
/// g(e_i, e_j) = signs[i] delta_ij, starting from the given basis.
std::vector<std::vector<double>> orthonormalize(const MetricAtPoint& g,
                                                std::vector<std::vector<double>> basis,
                                                std::vector<int>& signs);

}  // namespace paracontact
