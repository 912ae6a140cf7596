// Dense tensors with a fixed valence at a single point.
//
// Components are stored row-major over the slot list, with every
// contravariant slot placed before every covariant slot:
//   T^{i_1..i_p}_{j_1..j_q}  ->  data[((i_1 * n + i_2) ... ) * n + j_q]
// Entries are either double or Jet.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paracontact/jet.hpp"

namespace paracontact {

class SlotError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Valence {
  int upper = 0;
  int lower = 0;
  int rank() const { return upper + lower; }
  friend bool operator==(const Valence&, const Valence&) = default;
};

template <class T>
class Tensor {
 public:
  using value_type = T;

  Tensor() = default;
  Tensor(int dim, Valence valence, T fill)
      : dim_(dim), valence_(valence), data_(count(dim, valence.rank()), std::move(fill)) {
    if (dim < 1) throw DimensionError("tensor dimension must be positive");
    if (valence.upper < 0 || valence.lower < 0) throw SlotError("negative valence");
  }

  int dim() const { return dim_; }
  Valence valence() const { return valence_; }
  int rank() const { return valence_.rank(); }
  std::size_t size() const { return data_.size(); }

  std::span<T> data() { return data_; }
  std::span<const T> data() const { return data_; }

  T& operator[](std::size_t flat) { return data_[flat]; }
  const T& operator[](std::size_t flat) const { return data_[flat]; }

  template <class... I>
  T& operator()(I... idx) {
    return data_[flat_index({static_cast<int>(idx)...})];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[flat_index({static_cast<int>(idx)...})];
  }

  T& at(std::span<const int> idx) { return data_[flat_index(idx)]; }
  const T& at(std::span<const int> idx) const { return data_[flat_index(idx)]; }

  std::size_t flat_index(std::span<const int> idx) const {
    if (static_cast<int>(idx.size()) != rank()) {
      throw SlotError("expected " + std::to_string(rank()) + " indices, got " +
                      std::to_string(idx.size()));
    }
    std::size_t f = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw std::out_of_range("tensor index out of range");
      f = f * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return f;
  }
  std::size_t flat_index(std::initializer_list<int> idx) const {
    return flat_index(std::span<const int>(idx.begin(), idx.size()));
  }

  /// Inverse of flat_index.
  void unflatten(std::size_t flat, std::span<int> idx) const {
    for (int s = rank() - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(flat % dim_);
      flat /= dim_;
    }
  }

  Tensor& operator+=(const Tensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Tensor& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend Tensor operator-(Tensor a) { return a *= -1.0; }

  void check_same_shape(const Tensor& o) const {
    if (dim_ != o.dim_) throw DimensionError("tensor dimension mismatch");
    if (!(valence_ == o.valence_)) throw SlotError("tensor valence mismatch");
  }

  static std::size_t count(int dim, int rank) {
    std::size_t c = 1;
    for (int i = 0; i < rank; ++i) c *= static_cast<std::size_t>(dim);
    return c;
  }

 private:
  int dim_ = 0;
  Valence valence_{};
  std::vector<T> data_;
};

using TensorValue = Tensor<double>;
using TensorJet = Tensor<Jet>;

inline double entry_value(double v) { return v; }
inline double entry_value(const Jet& j) { return j.value(); }

// -- construction helpers ----------------------------------------------------

inline TensorValue zeros(int dim, Valence v) { return TensorValue(dim, v, 0.0); }

inline TensorValue identity(int dim) {
  TensorValue t(dim, {1, 1}, 0.0);
  for (int i = 0; i < dim; ++i) t(i, i) = 1.0;
  return t;
}

inline TensorValue vector_value(std::span<const double> c) {
  TensorValue t(static_cast<int>(c.size()), {1, 0}, 0.0);
  std::copy(c.begin(), c.end(), t.data().begin());
  return t;
}

inline TensorValue covector_value(std::span<const double> c) {
  TensorValue t(static_cast<int>(c.size()), {0, 1}, 0.0);
  std::copy(c.begin(), c.end(), t.data().begin());
  return t;
}

/// Component values (constant terms) of a jet-valued tensor.
inline TensorValue values(const TensorJet& t) {
  TensorValue out(t.dim(), t.valence(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i].value();
  return out;
}

inline TensorJet truncated(const TensorJet& t, int order) {
  TensorJet out = t;
  for (auto& j : out.data()) j = j.truncated(order);
  return out;
}

/// Lowest jet order among the components.
inline int min_order(const TensorJet& t) {
  int o = t.size() ? t[0].order() : 0;
  for (const auto& j : t.data()) o = std::min(o, j.order());
  return o;
}

template <class T>
double max_abs(const Tensor<T>& t) {
  double m = 0.0;
  for (const auto& v : t.data()) m = std::max(m, std::abs(entry_value(v)));
  return m;
}

// -- algebra -------------------------------------------------------------------

namespace detail {

template <class T>
T zero_like(const Tensor<T>& t) {
  if constexpr (std::is_same_v<T, Jet>) {
    return t.size() ? t[0].constant(0.0) : Jet();
  } else {
    return T{};
  }
}

// Slot permutation: out slot k takes input slot perm[k].
template <class T>
Tensor<T> permute(const Tensor<T>& t, std::span<const int> perm, Valence out_valence) {
  Tensor<T> out(t.dim(), out_valence, zero_like(t));
  const int r = t.rank();
  std::vector<int> in_idx(r), out_idx(r);
  for (std::size_t f = 0; f < t.size(); ++f) {
    t.unflatten(f, in_idx);
    for (int k = 0; k < r; ++k) out_idx[k] = in_idx[perm[k]];
    out.at(out_idx) = t[f];
  }
  return out;
}

}  // namespace detail

/// Contracts the upper_slot-th contravariant slot with the lower_slot-th
/// covariant slot (both counted within their own kind).
template <class T>
Tensor<T> contract(const Tensor<T>& t, int upper_slot, int lower_slot) {
  const Valence v = t.valence();
  if (v.upper == 0 || v.lower == 0) {
    throw SlotError("contraction needs one contravariant and one covariant slot");
  }
  if (upper_slot < 0 || upper_slot >= v.upper) throw SlotError("contravariant slot out of range");
  if (lower_slot < 0 || lower_slot >= v.lower) throw SlotError("covariant slot out of range");
  const int n = t.dim();
  const int a = upper_slot;
  const int b = v.upper + lower_slot;
  const Valence ov{v.upper - 1, v.lower - 1};
  const int orank = ov.rank();
  if (orank == 0) {
    T sum = detail::zero_like(t);
    std::vector<int> idx(2);
    for (int i = 0; i < n; ++i) {
      idx[0] = idx[1] = i;
      sum += t.at(idx);
    }
    Tensor<T> out(n, ov, sum);
    return out;
  }
  Tensor<T> out(n, ov, detail::zero_like(t));
  std::vector<int> oidx(orank), iidx(t.rank());
  for (std::size_t f = 0; f < out.size(); ++f) {
    out.unflatten(f, oidx);
    int k = 0;
    for (int s = 0; s < t.rank(); ++s) {
      if (s == a || s == b) continue;
      iidx[s] = oidx[k++];
    }
    T sum = detail::zero_like(t);
    for (int i = 0; i < n; ++i) {
      iidx[a] = iidx[b] = i;
      sum += t.at(iidx);
    }
    out[f] = std::move(sum);
  }
  return out;
}

/// Scalar entry of a rank-0 tensor.
template <class T>
const T& scalar(const Tensor<T>& t) {
  if (t.rank() != 0) throw SlotError("not a scalar");
  return t[0];
}

template <class T>
Tensor<T> tensor_product(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.dim() != b.dim()) throw DimensionError("tensor_product: dimension mismatch");
  const Valence va = a.valence();
  const Valence vb = b.valence();
  // Raw product has slot order [a_up, a_low, b_up, b_low]; reorder to
  // [a_up, b_up, a_low, b_low].
  const int n = a.dim();
  const Valence ov{va.upper + vb.upper, va.lower + vb.lower};
  Tensor<T> out(n, ov, detail::zero_like(a));
  std::vector<int> ia(a.rank()), ib(b.rank()), io(ov.rank());
  for (std::size_t fa = 0; fa < a.size(); ++fa) {
    a.unflatten(fa, ia);
    for (std::size_t fb = 0; fb < b.size(); ++fb) {
      b.unflatten(fb, ib);
      int k = 0;
      for (int s = 0; s < va.upper; ++s) io[k++] = ia[s];
      for (int s = 0; s < vb.upper; ++s) io[k++] = ib[s];
      for (int s = 0; s < va.lower; ++s) io[k++] = ia[va.upper + s];
      for (int s = 0; s < vb.lower; ++s) io[k++] = ib[vb.upper + s];
      out.at(io) = a[fa] * b[fb];
    }
  }
  return out;
}

/// Swaps two slots of the same kind.
template <class T>
Tensor<T> swap_slots(const Tensor<T>& t, int s1, int s2) {
  const Valence v = t.valence();
  if (s1 < 0 || s2 < 0 || s1 >= t.rank() || s2 >= t.rank()) throw SlotError("slot out of range");
  if ((s1 < v.upper) != (s2 < v.upper)) throw SlotError("cannot swap slots of different kinds");
  std::vector<int> perm(t.rank());
  for (int k = 0; k < t.rank(); ++k) perm[k] = k;
  std::swap(perm[s1], perm[s2]);
  return detail::permute(t, perm, v);
}

enum class IndexMove { Raise, Lower };

/// Lowers the contravariant slot `slot` with metric g (0,2) or raises the
/// covariant slot `slot` with g_inv (2,0). A lowered slot becomes the first
/// covariant slot; a raised slot becomes the last contravariant slot. So
/// lowering the last upper slot and raising the first lower slot are
/// mutually inverse.
template <class T>
Tensor<T> metric_convert(const Tensor<T>& t, int slot, IndexMove move, const Tensor<T>& metric) {
  const Valence v = t.valence();
  const int n = t.dim();
  if (metric.dim() != n) throw DimensionError("metric_convert: dimension mismatch");
  if (slot < 0 || slot >= t.rank()) throw SlotError("metric_convert: slot out of range");
  const bool is_upper = slot < v.upper;
  if (move == IndexMove::Lower) {
    if (!is_upper) throw SlotError("metric_convert: cannot lower a covariant slot");
    if (!(metric.valence() == Valence{0, 2})) throw SlotError("lowering needs a (0,2) metric");
  } else {
    if (is_upper) throw SlotError("metric_convert: cannot raise a contravariant slot");
    if (!(metric.valence() == Valence{2, 0})) throw SlotError("raising needs a (2,0) inverse metric");
  }
  const Valence ov = move == IndexMove::Lower ? Valence{v.upper - 1, v.lower + 1}
                                              : Valence{v.upper + 1, v.lower - 1};
  // Position of the converted slot in the output.
  const int target = move == IndexMove::Lower ? ov.upper : ov.upper - 1;
  Tensor<T> out(n, ov, detail::zero_like(t));
  const int r = t.rank();
  std::vector<int> oidx(r), iidx(r);
  std::vector<int> mi(2);
  for (std::size_t f = 0; f < out.size(); ++f) {
    out.unflatten(f, oidx);
    // Map output slots (except target) to input slots (except slot), in order.
    int k = 0;
    for (int s = 0; s < r; ++s) {
      if (s == slot) continue;
      if (k == target) ++k;
      iidx[s] = oidx[k++];
    }
    T sum = detail::zero_like(t);
    for (int i = 0; i < n; ++i) {
      iidx[slot] = i;
      mi[0] = i;
      mi[1] = oidx[target];
      sum += metric.at(mi) * t.at(iidx);
    }
    out[f] = std::move(sum);
  }
  return out;
}

// -- small dense helpers on numeric tensors ------------------------------------

/// (1,1) tensor applied to a vector: (A v)^i = A^i_j v^j.
inline std::vector<double> act(const TensorValue& a, std::span<const double> v) {
  const int n = a.dim();
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i] += a(i, j) * v[j];
  }
  return out;
}

/// (0,2) tensor on two vectors.
inline double bilinear(const TensorValue& b, std::span<const double> x, std::span<const double> y) {
  const int n = b.dim();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s += b(i, j) * x[i] * y[j];
  }
  return s;
}

/// (0,1) tensor on a vector.
inline double pair(const TensorValue& w, std::span<const double> v) {
  double s = 0.0;
  for (int i = 0; i < w.dim(); ++i) s += w[i] * v[i];
  return s;
}

inline TensorValue compose11(const TensorValue& a, const TensorValue& b) {
  const int n = a.dim();
  TensorValue out(n, {1, 1}, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
    }
  }
  return out;
}

}  // namespace paracontact
