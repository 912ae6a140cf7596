#include "paracontact/geometry.hpp"

#include <string>

namespace paracontact {

ConnectionAtPoint christoffel(const TensorJet& metric_jets, std::span<const double> point,
                              std::optional<int> declared_index) {
  if (!(metric_jets.valence() == Valence{0, 2})) throw SlotError("christoffel: metric must be (0,2)");
  if (min_order(metric_jets) < 1) throw JetOrderError("christoffel: metric jets need order >= 1");
  const int n = metric_jets.dim();
  ConnectionAtPoint conn;
  conn.point.assign(point.begin(), point.end());
  conn.metric = metric_jets;
  conn.metric_at = MetricAtPoint::from(values(metric_jets), declared_index);
  conn.metric_inv = inverse_metric(metric_jets);

  // dg(i, j, l) = d_l g_ij
  const TensorJet dg = partial_derivative(metric_jets);
  const Jet zero = dg[0].constant(0.0);
  // First kind: G_l,ij = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  std::vector<Jet> first(static_cast<std::size_t>(n) * n * n, zero);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Jet v = (dg(j, l, i) + dg(i, l, j) - dg(i, j, l)) * 0.5;
        first[(l * n + i) * n + j] = v;
        first[(l * n + j) * n + i] = v;
      }
    }
  }
  conn.gamma = TensorJet(n, {1, 2}, zero);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Jet s = zero;
        for (int l = 0; l < n; ++l) s += conn.metric_inv(k, l) * first[(l * n + i) * n + j];
        conn.gamma(k, i, j) = s;
        conn.gamma(k, j, i) = s;
      }
    }
  }
  return conn;
}

TensorJet partial_derivative(const TensorJet& t) {
  const int n = t.dim();
  const Valence v = t.valence();
  if (min_order(t) < 1) throw JetOrderError("partial_derivative: jets of order >= 1 required");
  TensorJet out(n, {v.upper, v.lower + 1}, t[0].partial(0));
  for (std::size_t f = 0; f < t.size(); ++f) {
    for (int m = 0; m < n; ++m) out[f * n + m] = t[f].partial(m);
  }
  return out;
}

CurvatureAtPoint curvature(const ConnectionAtPoint& conn) {
  const int n = conn.dim();
  if (conn.order() < 2) {
    throw JetOrderError("curvature: connection jets of order >= 2 required, have " +
                        std::to_string(conn.order()));
  }
  const auto& G = conn.gamma;
  const TensorJet dG = partial_derivative(G);  // dG(l, j, k, i) = d_i Gamma^l_jk
  const Jet zero = dG[0].constant(0.0);
  CurvatureAtPoint c;
  c.riemann_ud = TensorJet(n, {1, 3}, zero);
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          Jet v = dG(l, j, k, i) - dG(l, i, k, j);
          for (int m = 0; m < n; ++m) {
            v += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          }
          c.riemann_ud(l, i, j, k) = v;
          c.riemann_ud(l, j, i, k) = -v;
        }
      }
    }
  }
  c.riemann_dddd = TensorJet(n, {0, 4}, zero);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Jet s = zero;
          for (int m = 0; m < n; ++m) s += conn.metric(l, m) * c.riemann_ud(m, i, j, k);
          c.riemann_dddd(i, j, k, l) = s;
        }
      }
    }
  }
  c.ricci = contract(c.riemann_ud, 0, 0);
  c.ricci_op = metric_convert(c.ricci, 0, IndexMove::Raise, conn.metric_inv);
  c.scalar = scalar(contract(c.ricci_op, 0, 0));
  c.dr = TensorValue(n, {0, 1}, 0.0);
  for (int m = 0; m < n; ++m) c.dr[m] = c.scalar.partial(m).value();
  const TensorJet nabla_q = covariant_derivative(c.ricci_op, conn);
  c.div_q = values(contract(nabla_q, 0, 1));
  return c;
}

TensorJet covariant_derivative(const TensorJet& t, const ConnectionAtPoint& conn) {
  const int n = t.dim();
  if (n != conn.dim()) throw DimensionError("covariant_derivative: dimension mismatch");
  const Valence v = t.valence();
  const int r = t.rank();
  TensorJet out = partial_derivative(t);
  std::vector<int> idx(r + 1), src(r);
  for (std::size_t f = 0; f < out.size(); ++f) {
    out.unflatten(f, idx);
    const int m = idx[r];
    Jet& acc = out[f];
    for (int s = 0; s < r; ++s) {
      for (int q = 0; q < r; ++q) src[q] = idx[q];
      for (int c = 0; c < n; ++c) {
        src[s] = c;
        if (s < v.upper) {
          acc += conn.gamma(idx[s], m, c) * t.at(src);
        } else {
          acc -= conn.gamma(c, m, idx[s]) * t.at(src);
        }
      }
    }
  }
  return out;
}

TensorJet lie_derivative(const TensorJet& t, const TensorJet& x, const ConnectionAtPoint& conn,
                         LieRoute route) {
  const int n = t.dim();
  if (!(x.valence() == Valence{1, 0})) throw SlotError("lie_derivative: X must be a vector field");
  const Valence v = t.valence();
  if (v.upper != 0 || v.lower < 1 || v.lower > 2) {
    throw SlotError("lie_derivative: only (0,1) and (0,2) tensors are supported");
  }
  // Derivative of T along m (last slot) and derivative of X: dx(a, i) = d_i X^a.
  const TensorJet dt = route == LieRoute::Partials ? partial_derivative(t)
                                                   : covariant_derivative(t, conn);
  const TensorJet dx = route == LieRoute::Partials ? partial_derivative(x)
                                                   : covariant_derivative(x, conn);
  const Jet zero = dt[0].constant(0.0);
  TensorJet out(n, v, zero);
  if (v.lower == 1) {
    for (int i = 0; i < n; ++i) {
      Jet s = zero;
      for (int m = 0; m < n; ++m) s += x[m] * dt(i, m) + t[m] * dx(m, i);
      out[i] = s;
    }
    return out;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Jet s = zero;
      for (int m = 0; m < n; ++m) {
        s += x[m] * dt(i, j, m) + t(m, j) * dx(m, i) + t(i, m) * dx(m, j);
      }
      out(i, j) = s;
    }
  }
  return out;
}

}  // namespace paracontact
