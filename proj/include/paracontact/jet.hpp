// Truncated multivariate Taylor jets.
//
// A Jet of order K in n variables stores the Taylor coefficients
// d^a f / a! for every multi-index a with |a| <= K, expanded around a
// fixed chart point. Monomials are ordered by total degree first, so the
// coefficients of a lower-order truncation are a prefix of the full array.
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paracontact {

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class JetOrderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class JetSpace {
 public:
  struct Term {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  /// Shared, immutable monomial tables; cached per (num_vars, max_order).
  static std::shared_ptr<const JetSpace> get(int num_vars, int max_order);

  JetSpace(int num_vars, int max_order);

  int num_vars() const { return num_vars_; }
  int max_order() const { return max_order_; }

  /// Number of monomials with total degree <= order.
  std::size_t size(int order) const { return prefix_size_.at(order); }
  std::size_t size() const { return degree_.size(); }

  std::span<const int> exponents(std::size_t monomial) const {
    return {exponents_.data() + monomial * num_vars_,
            static_cast<std::size_t>(num_vars_)};
  }
  int degree(std::size_t monomial) const { return degree_[monomial]; }

  /// Throws std::out_of_range if |alpha| > max_order.
  std::size_t index_of(std::span<const int> alpha) const;

  /// Product terms whose output monomial has degree <= order.
  std::span<const Term> product_terms(int order) const {
    return {terms_.data(), terms_prefix_.at(order)};
  }

  /// Index of monomial + e_var; only valid when degree(monomial) < max_order.
  std::size_t raise(int var, std::size_t monomial) const {
    return raise_[static_cast<std::size_t>(var) * size() + monomial];
  }

 private:
  std::uint64_t key(std::span<const int> alpha) const;

  int num_vars_;
  int max_order_;
  std::vector<int> exponents_;
  std::vector<int> degree_;
  std::vector<std::size_t> prefix_size_;
  std::vector<std::pair<std::uint64_t, std::size_t>> lookup_;  // sorted by key
  std::vector<Term> terms_;
  std::vector<std::size_t> terms_prefix_;
  std::vector<std::size_t> raise_;
};

class Jet {
 public:
  Jet() = default;
  Jet(std::shared_ptr<const JetSpace> space, int order, double value = 0.0);

  /// The coordinate function x_var expanded at value.
  static Jet variable(std::shared_ptr<const JetSpace> space, int order, int var,
                      double value);

  bool valid() const { return space_ != nullptr; }
  int order() const { return order_; }
  int num_vars() const { return space_->num_vars(); }
  const std::shared_ptr<const JetSpace>& space() const { return space_; }

  double value() const { return coeffs_[0]; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

  /// Taylor coefficient d^alpha f / alpha!.
  double coeff(std::span<const int> alpha) const;
  /// Raw partial derivative d^alpha f at the center.
  double derivative(std::span<const int> alpha) const;

  /// d/dx_var; the result has order() - 1.
  Jet partial(int var) const;
  Jet truncated(int order) const;

  /// A constant jet sharing this jet's space and order.
  Jet constant(double value) const { return Jet(space_, order_, value); }

  Jet& operator+=(const Jet& other);
  Jet& operator-=(const Jet& other);
  Jet& operator*=(const Jet& other);
  Jet& operator/=(const Jet& other);
  Jet& operator+=(double s) {
    coeffs_[0] += s;
    return *this;
  }
  Jet& operator-=(double s) {
    coeffs_[0] -= s;
    return *this;
  }
  Jet& operator*=(double s);
  Jet& operator/=(double s) { return *this *= (1.0 / s); }

  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a /= s; }
  friend Jet operator/(double s, const Jet& a);

 private:
  void check_compatible(const Jet& other) const;

  std::shared_ptr<const JetSpace> space_;
  int order_ = 0;
  std::vector<double> coeffs_;
};

/// Composition with a univariate function given by its Taylor coefficients
/// at the constant term of x: sum_m series[m] * (x - x0)^m.
Jet compose_series(const Jet& x, std::span<const double> series);

Jet reciprocal(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
/// x^p for a real constant exponent.
Jet pow(const Jet& x, double p);

}  // namespace paracontact
