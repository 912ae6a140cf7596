// Finite-difference curvature pipeline on plain doubles. Shares nothing with
// the jet engine beyond pointwise metric evaluation.
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace oracle {

using Point = std::vector<double>;
using MetricFn = std::function<Eigen::MatrixXd(const Point&)>;

inline Point shifted(Point x, int i, double h) {
  x[i] += h;
  return x;
}

// gamma[k][i][j] = Gamma^k_ij by central differences of the metric.
using Gamma = std::vector<std::vector<std::vector<double>>>;

inline Gamma christoffel(const MetricFn& g, const Point& x, double h = 1e-5) {
  const int n = static_cast<int>(x.size());
  std::vector<Eigen::MatrixXd> dg(n);
  for (int m = 0; m < n; ++m) dg[m] = (g(shifted(x, m, h)) - g(shifted(x, m, -h))) / (2 * h);
  const Eigen::MatrixXd ginv = g(x).inverse();
  Gamma out(n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) {
          s += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        }
        out[k][i][j] = s;
      }
    }
  }
  return out;
}

// r[l][i][j][k] = (R(d_i, d_j) d_k)^l
using Riemann = std::vector<std::vector<std::vector<std::vector<double>>>>;

inline Riemann riemann(const MetricFn& g, const Point& x, double h = 1e-3) {
  const int n = static_cast<int>(x.size());
  const Gamma G = christoffel(g, x);
  std::vector<Gamma> dG(n);
  for (int m = 0; m < n; ++m) {
    const Gamma p = christoffel(g, shifted(x, m, h));
    const Gamma q = christoffel(g, shifted(x, m, -h));
    dG[m] = p;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) dG[m][a][b][c] = (p[a][b][c] - q[a][b][c]) / (2 * h);
      }
    }
  }
  Riemann r(n, std::vector<std::vector<std::vector<double>>>(
                   n, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0))));
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          double v = dG[i][l][j][k] - dG[j][l][i][k];
          for (int m = 0; m < n; ++m) v += G[l][i][m] * G[m][j][k] - G[l][j][m] * G[m][i][k];
          r[l][i][j][k] = v;
        }
      }
    }
  }
  return r;
}

inline Eigen::MatrixXd ricci(const MetricFn& g, const Point& x) {
  const int n = static_cast<int>(x.size());
  const Riemann r = riemann(g, x);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) s(j, k) += r[i][i][j][k];
    }
  }
  return s;
}

inline double scalar_curvature(const MetricFn& g, const Point& x) {
  return (g(x).inverse().cwiseProduct(ricci(g, x))).sum();
}

}  // namespace oracle
