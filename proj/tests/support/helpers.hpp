// Shared test helpers.
#pragma once

#include <Eigen/Dense>
#include <string>

#include "fd_oracle.hpp"
#include "paracontact/models.hpp"
#include "paracontact/structure.hpp"

namespace testing_support {

inline paracontact::ManifoldModel chart(const std::string& name) {
  return std::get<paracontact::ManifoldModel>(paracontact::find_builtin(name)->source);
}

inline paracontact::HypersurfaceBundle bundle(const std::string& name) {
  return std::get<paracontact::HypersurfaceBundle>(paracontact::find_builtin(name)->source);
}

/// Pointwise metric values of a structure, for the finite-difference oracle.
inline oracle::MetricFn metric_fn(const paracontact::ParacontactStructure& s) {
  return [&s](const oracle::Point& x) {
    const auto g = paracontact::values(s.evaluate(x, 0).g);
    const int n = g.dim();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = g(i, j);
    }
    return m;
  };
}

}  // namespace testing_support
