#pragma once

#include <map>
#include <optional>
#include <string>

#include "shiftop/order.hpp"
#include "shiftop/scalar_poly.hpp"

namespace shiftop {

// Truncated series sum_a c_a(x) r^a. Every coefficient with exponent below
// order() is exact; nothing is known at or above it.
class ScalarSeries {
 public:
  using Terms = std::map<Rational, ScalarPoly>;

  ScalarSeries() = default;
  explicit ScalarSeries(Order order) : order_(std::move(order)) {}
  static ScalarSeries constant(const ScalarPoly& c, Order order = Order::infinite());
  static ScalarSeries monomial(const Rational& exp, const ScalarPoly& c, Order order = Order::infinite());
  // (1 + c r^2)^p for rational p, truncated below `order`.
  static ScalarSeries binomial_r2(const Rational& c, const Rational& p, const Rational& order);

  const Terms& terms() const { return t_; }
  const Order& order() const { return order_; }
  ScalarPoly coeff(const Rational& exp) const;
  std::optional<Rational> min_exponent() const;
  bool is_zero() const { return t_.empty(); }

  void add(const Rational& exp, const ScalarPoly& c);
  ScalarSeries truncated(const Order& order) const;

  ScalarSeries operator-() const;
  friend ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b);
  friend ScalarSeries operator-(const ScalarSeries& a, const ScalarSeries& b) { return a + (-b); }
  friend ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b);
  friend ScalarSeries operator*(const ScalarSeries& a, const Rational& s);
  ScalarSeries shifted(const Rational& by) const;  // r^by * series

  ScalarSeries derivative() const;
  // The next three need constant term 1 and non-negative exponents; an exact
  // input is cut at `cap`.
  ScalarSeries reciprocal(const Rational& cap) const;
  ScalarSeries sqrt(const Rational& cap) const;
  ScalarSeries log_derivative(const Rational& cap) const;

  // Agreement of all coefficients below min(order(), other.order(), limit).
  bool agrees_with(const ScalarSeries& other, const Order& limit = Order::infinite()) const;
  std::string str() const;

 private:
  Terms t_;
  Order order_;
};

}  // namespace shiftop
