#include "paracontact/metric.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace paracontact {

namespace {

Eigen::MatrixXd to_matrix(const TensorValue& t) {
  const int n = t.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = t(i, j);
  }
  return m;
}

}  // namespace

MetricAtPoint MetricAtPoint::from(const TensorValue& g, std::optional<int> declared_index) {
  if (!(g.valence() == Valence{0, 2})) throw SlotError("metric must have valence (0,2)");
  const int n = g.dim();
  const double scale = std::max(1.0, max_abs(g));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(g(i, j) - g(j, i)) > 1e-12 * scale) {
        throw DegenerateMetricError("metric is not symmetric at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
    }
  }
  const Eigen::MatrixXd m = to_matrix(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  const auto& ev = eig.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  MetricAtPoint out;
  for (int i = 0; i < n; ++i) {
    if (std::abs(ev(i)) <= 1e-12 * largest || largest == 0.0) {
      throw DegenerateMetricError("metric is degenerate (eigenvalue " + std::to_string(ev(i)) +
                                  ")");
    }
    out.signs_.push_back(ev(i) < 0.0 ? -1 : 1);
    if (ev(i) < 0.0) ++out.index_;
  }
  if (declared_index && *declared_index != out.index_) {
    throw SignatureError("metric index mismatch: declared " + std::to_string(*declared_index) +
                         ", computed " + std::to_string(out.index_));
  }
  out.g_ = g;
  out.det_ = m.determinant();
  const Eigen::MatrixXd inv = m.inverse();
  out.g_inv_ = TensorValue(n, {2, 0}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out.g_inv_(i, j) = 0.5 * (inv(i, j) + inv(j, i));
  }
  return out;
}

std::vector<double> MetricAtPoint::lower(std::span<const double> v) const {
  const int n = dim();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i] += g_(i, j) * v[j];
  }
  return out;
}

std::vector<double> MetricAtPoint::raise(std::span<const double> w) const {
  const int n = dim();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i] += g_inv_(i, j) * w[j];
  }
  return out;
}

int inertia_index(const TensorValue& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(to_matrix(g));
  int idx = 0;
  for (int i = 0; i < g.dim(); ++i) idx += eig.eigenvalues()(i) < 0.0 ? 1 : 0;
  return idx;
}

TensorJet inverse_metric(const TensorJet& g) {
  const int n = g.dim();
  if (g.rank() != 2) throw SlotError("inverse_metric: rank-2 tensor required");
  std::vector<Jet> a(g.data().begin(), g.data().end());
  const Jet zero = a[0].constant(0.0);
  std::vector<Jet> inv(static_cast<std::size_t>(n) * n, zero);
  for (int i = 0; i < n; ++i) inv[i * n + i] = zero.constant(1.0);
  auto at = [n](std::vector<Jet>& m, int r, int c) -> Jet& { return m[r * n + c]; };
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(at(a, r, col).value()) > std::abs(at(a, pivot, col).value())) pivot = r;
    }
    if (std::abs(at(a, pivot, col).value()) == 0.0) {
      throw DegenerateMetricError("jet metric is singular at the expansion point");
    }
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(at(a, pivot, c), at(a, col, c));
        std::swap(at(inv, pivot, c), at(inv, col, c));
      }
    }
    const Jet rp = reciprocal(at(a, col, col));
    for (int c = 0; c < n; ++c) {
      at(a, col, c) = at(a, col, c) * rp;
      at(inv, col, c) = at(inv, col, c) * rp;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Jet f = at(a, r, col);
      for (int c = 0; c < n; ++c) {
        at(a, r, c) -= f * at(a, col, c);
        at(inv, r, c) -= f * at(inv, col, c);
      }
    }
  }
  const Valence v = g.valence();
  TensorJet out(n, {v.lower, v.upper}, zero);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = at(inv, i, j);
  }
  return out;
}

std::vector<std::vector<double>> orthonormalize(const MetricAtPoint& g,
                                                std::vector<std::vector<double>> basis,
                                                std::vector<int>& signs) {
  signs.clear();
  std::vector<std::vector<double>> frame;
  for (auto& v : basis) {
    for (std::size_t j = 0; j < frame.size(); ++j) {
      const double c = signs[j] * g.inner(v, frame[j]);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * frame[j][k];
    }
    const double q = g.inner(v, v);
    if (std::abs(q) < 1e-8) throw DegenerateMetricError("null vector during Gram-Schmidt");
    const double s = 1.0 / std::sqrt(std::abs(q));
    for (double& x : v) x *= s;
    signs.push_back(q < 0.0 ? -1 : 1);
    frame.push_back(v);
  }
  return frame;
}

}  // namespace paracontact
