#include "paracontact/jet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace paracontact {

namespace {

void append_degree(int num_vars, int degree, int var, std::vector<int>& current,
                   std::vector<int>& out) {
  if (var == num_vars - 1) {
    current[var] = degree;
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[var] = e;
    append_degree(num_vars, degree - e, var + 1, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::shared_ptr<const JetSpace> JetSpace::get(int num_vars, int max_order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetSpace>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{num_vars, max_order}];
  if (!slot) slot = std::make_shared<const JetSpace>(num_vars, max_order);
  return slot;
}

JetSpace::JetSpace(int num_vars, int max_order)
    : num_vars_(num_vars), max_order_(max_order) {
  if (num_vars < 1 || max_order < 0) {
    throw std::invalid_argument("JetSpace: need num_vars >= 1 and max_order >= 0");
  }
  std::vector<int> current(num_vars, 0);
  for (int d = 0; d <= max_order; ++d) {
    append_degree(num_vars, d, 0, current, exponents_);
    prefix_size_.push_back(exponents_.size() / num_vars);
  }
  const std::size_t m = prefix_size_.back();
  degree_.resize(m);
  lookup_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    auto a = exponents(i);
    int deg = 0;
    for (int e : a) deg += e;
    degree_[i] = deg;
    lookup_.emplace_back(key(a), i);
  }
  std::sort(lookup_.begin(), lookup_.end());

  std::vector<int> sum(num_vars);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (degree_[i] + degree_[j] > max_order) continue;
      auto a = exponents(i);
      auto b = exponents(j);
      for (int v = 0; v < num_vars; ++v) sum[v] = a[v] + b[v];
      terms_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                        static_cast<std::uint32_t>(index_of(sum))});
    }
  }
  std::stable_sort(terms_.begin(), terms_.end(),
                   [](const Term& x, const Term& y) { return x.out < y.out; });
  for (int d = 0; d <= max_order; ++d) {
    const auto limit = prefix_size_[d];
    auto it = std::partition_point(terms_.begin(), terms_.end(),
                                   [&](const Term& t) { return t.out < limit; });
    terms_prefix_.push_back(static_cast<std::size_t>(it - terms_.begin()));
  }

  raise_.assign(static_cast<std::size_t>(num_vars) * m,
                std::numeric_limits<std::size_t>::max());
  for (int v = 0; v < num_vars; ++v) {
    for (std::size_t i = 0; i < m; ++i) {
      if (degree_[i] >= max_order) continue;
      auto a = exponents(i);
      std::copy(a.begin(), a.end(), sum.begin());
      ++sum[v];
      raise_[static_cast<std::size_t>(v) * m + i] = index_of(sum);
    }
  }
}

std::uint64_t JetSpace::key(std::span<const int> alpha) const {
  std::uint64_t k = 0;
  for (int e : alpha) k = k * static_cast<std::uint64_t>(max_order_ + 1) + e;
  return k;
}

std::size_t JetSpace::index_of(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != num_vars_) {
    throw std::out_of_range("multi-index has wrong length");
  }
  int deg = 0;
  for (int e : alpha) {
    if (e < 0) throw std::out_of_range("negative multi-index entry");
    deg += e;
  }
  if (deg > max_order_) throw std::out_of_range("multi-index exceeds jet order");
  const auto k = key(alpha);
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(),
                             std::pair<std::uint64_t, std::size_t>{k, 0});
  return it->second;
}

// ---------------------------------------------------------------------------

Jet::Jet(std::shared_ptr<const JetSpace> space, int order, double value)
    : space_(std::move(space)), order_(order) {
  if (!space_) throw std::invalid_argument("Jet: null space");
  if (order < 0 || order > space_->max_order()) {
    throw JetOrderError("Jet: order " + std::to_string(order) +
                        " outside the jet space");
  }
  coeffs_.assign(space_->size(order), 0.0);
  coeffs_[0] = value;
}

Jet Jet::variable(std::shared_ptr<const JetSpace> space, int order, int var,
                  double value) {
  Jet j(std::move(space), order, value);
  if (var < 0 || var >= j.num_vars()) throw std::out_of_range("Jet::variable");
  if (order >= 1) j.coeffs_[1 + var] = 1.0;
  return j;
}

double Jet::coeff(std::span<const int> alpha) const {
  const auto i = space_->index_of(alpha);
  if (i >= coeffs_.size()) {
    throw JetOrderError("requested coefficient above jet order " +
                        std::to_string(order_));
  }
  return coeffs_[i];
}

double Jet::derivative(std::span<const int> alpha) const {
  double factorial = 1.0;
  for (int e : alpha) {
    for (int k = 2; k <= e; ++k) factorial *= k;
  }
  return coeff(alpha) * factorial;
}

Jet Jet::partial(int var) const {
  if (order_ < 1) {
    throw JetOrderError("cannot differentiate a jet of order 0");
  }
  Jet out(space_, order_ - 1);
  const std::size_t n = out.coeffs_.size();
  for (std::size_t m = 0; m < n; ++m) {
    const auto up = space_->raise(var, m);
    out.coeffs_[m] = (space_->exponents(m)[var] + 1) * coeffs_[up];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  if (order > order_) {
    throw JetOrderError("cannot raise jet order by truncation");
  }
  Jet out(space_, order);
  std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
  return out;
}

void Jet::check_compatible(const Jet& other) const {
  if (!space_ || !other.space_) throw std::invalid_argument("Jet: uninitialised operand");
  if (space_->num_vars() != other.space_->num_vars()) {
    throw std::invalid_argument("Jet: operands expanded in different variable counts");
  }
}

Jet& Jet::operator+=(const Jet& other) {
  check_compatible(other);
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& other) {
  check_compatible(other);
  if (other.order_ < order_) *this = truncated(other.order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Jet& Jet::operator*=(const Jet& other) { return *this = *this * other; }
Jet& Jet::operator/=(const Jet& other) { return *this = *this / other; }

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& c : out.coeffs_) c = -c;
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  const int order = std::min(a.order_, b.order_);
  const auto& space =
      a.space_->max_order() >= b.space_->max_order() ? a.space_ : b.space_;
  Jet out(space, order);
  const double* x = a.coeffs_.data();
  const double* y = b.coeffs_.data();
  double* z = out.coeffs_.data();
  for (const auto& t : space->product_terms(order)) z[t.out] += x[t.lhs] * y[t.rhs];
  return out;
}

Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
Jet operator/(double s, const Jet& a) { return reciprocal(a) * s; }

// ---------------------------------------------------------------------------

Jet compose_series(const Jet& x, std::span<const double> series) {
  const int r = x.order();
  if (series.size() < static_cast<std::size_t>(r) + 1) {
    throw std::invalid_argument("compose_series: series shorter than jet order");
  }
  Jet h = x;
  h.coeffs()[0] = 0.0;
  Jet result = x.constant(series[r]);
  for (int m = r - 1; m >= 0; --m) {
    result = result * h;
    result += series[m];
  }
  return result;
}

namespace {

bool is_zero(double v) { return std::abs(v) < std::numeric_limits<double>::min(); }

std::vector<double> power_series(double a0, double p, int order) {
  std::vector<double> s(order + 1);
  double binom = 1.0;
  for (int m = 0; m <= order; ++m) {
    s[m] = binom * std::pow(a0, p - m);
    binom *= (p - m) / (m + 1);
  }
  return s;
}

}  // namespace

Jet reciprocal(const Jet& x) {
  const double a0 = x.value();
  if (is_zero(a0)) throw DomainError("division by a jet with zero constant term");
  std::vector<double> s(x.order() + 1);
  double term = 1.0 / a0;
  for (int m = 0; m <= x.order(); ++m) {
    s[m] = term;
    term *= -1.0 / a0;
  }
  return compose_series(x, s);
}

Jet exp(const Jet& x) {
  std::vector<double> s(x.order() + 1);
  double term = std::exp(x.value());
  for (int m = 0; m <= x.order(); ++m) {
    s[m] = term;
    term /= (m + 1);
  }
  return compose_series(x, s);
}

Jet log(const Jet& x) {
  const double a0 = x.value();
  if (!(a0 > 0.0)) {
    throw DomainError("ln of a jet with non-positive constant term " + std::to_string(a0));
  }
  std::vector<double> s(x.order() + 1);
  s[0] = std::log(a0);
  double inv = 1.0;
  for (int m = 1; m <= x.order(); ++m) {
    inv /= a0;
    s[m] = ((m % 2 == 1) ? 1.0 : -1.0) * inv / m;
  }
  return compose_series(x, s);
}

Jet sqrt(const Jet& x) {
  const double a0 = x.value();
  if (!(a0 > 0.0)) {
    throw DomainError("sqrt of a jet with non-positive constant term " + std::to_string(a0));
  }
  return compose_series(x, power_series(a0, 0.5, x.order()));
}

Jet sin(const Jet& x) {
  const double s0 = std::sin(x.value());
  const double c0 = std::cos(x.value());
  const double cycle[4] = {s0, c0, -s0, -c0};
  std::vector<double> s(x.order() + 1);
  double fact = 1.0;
  for (int m = 0; m <= x.order(); ++m) {
    if (m > 0) fact *= m;
    s[m] = cycle[m % 4] / fact;
  }
  return compose_series(x, s);
}

Jet cos(const Jet& x) {
  const double s0 = std::sin(x.value());
  const double c0 = std::cos(x.value());
  const double cycle[4] = {c0, -s0, -c0, s0};
  std::vector<double> s(x.order() + 1);
  double fact = 1.0;
  for (int m = 0; m <= x.order(); ++m) {
    if (m > 0) fact *= m;
    s[m] = cycle[m % 4] / fact;
  }
  return compose_series(x, s);
}

Jet pow(const Jet& x, double p) {
  if (p == std::round(p) && std::abs(p) <= 64.0) {
    const int k = static_cast<int>(p);
    if (k < 0) return reciprocal(pow(x, -p));
    Jet result = x.constant(1.0);
    Jet base = x;
    for (int e = k; e > 0; e >>= 1) {
      if (e & 1) result = result * base;
      if (e > 1) base = base * base;
    }
    return result;
  }
  const double a0 = x.value();
  if (!(a0 > 0.0)) {
    throw DomainError("non-integer power of a jet with non-positive constant term");
  }
  return compose_series(x, power_series(a0, p, x.order()));
}

}  // namespace paracontact
