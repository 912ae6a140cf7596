// Levi-Civita connection, curvature and Lie derivatives from metric jets.
//
// Conventions:
//   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   riemann_ud(l, i, j, k)   = (R(d_i, d_j) d_k)^l
//   riemann_dddd(i, j, k, l) = g(R(d_i, d_j) d_k, d_l)
//   S(Y, Z) = trace(X -> R(X, Y) Z),  Q = S with its first slot raised
// Covariant derivatives append the differentiation slot as the last
// covariant slot: (nabla T)(..., X) = (nabla_X T)(...).
#pragma once

#include <span>
#include <vector>

#include "paracontact/metric.hpp"
#include "paracontact/tensor.hpp"

namespace paracontact {

struct ConnectionAtPoint {
  std::vector<double> point;
  TensorJet metric;      // (0,2)
  TensorJet metric_inv;  // (2,0)
  TensorJet gamma;       // (1,2): gamma(k, i, j) = Gamma^k_ij
  MetricAtPoint metric_at;

  int dim() const { return metric.dim(); }
  int order() const { return min_order(gamma); }
};

struct CurvatureAtPoint {
  TensorJet riemann_ud;
  TensorJet riemann_dddd;
  TensorJet ricci;
  TensorJet ricci_op;
  Jet scalar;
  TensorValue dr;     // (0,1), differential of the scalar-curvature jet
  TensorValue div_q;  // (0,1), (div Q)(X) = trace(Y -> (nabla_Y Q) X)
};

/// Requires metric jets of order >= 1; the connection has order K - 1.
ConnectionAtPoint christoffel(const TensorJet& metric_jets, std::span<const double> point,
                              std::optional<int> declared_index = {});

/// Requires connection order >= 2 (metric jets of order >= 3).
CurvatureAtPoint curvature(const ConnectionAtPoint& conn);

/// d_m of every component, as a tensor with one extra covariant slot (last).
TensorJet partial_derivative(const TensorJet& t);

TensorJet covariant_derivative(const TensorJet& t, const ConnectionAtPoint& conn);

enum class LieRoute { Partials, Covariant };

/// Lie derivative of a (0,1) or (0,2) tensor field along a vector field.
TensorJet lie_derivative(const TensorJet& t, const TensorJet& x, const ConnectionAtPoint& conn,
                         LieRoute route = LieRoute::Partials);

}  // namespace paracontact
