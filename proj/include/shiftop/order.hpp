#pragma once

#include <string>

#include "shiftop/rational.hpp"

namespace shiftop {

// Truncation bound: a rational or +infinity (exact).
class Order {
 public:
  Order() : inf_(true) {}
  Order(const Rational& v) : inf_(false), v_(v) {}  // NOLINT(implicit)
  Order(int v) : Order(Rational(v)) {}             // NOLINT(implicit)
  static Order infinite() { return Order(); }

  bool is_infinite() const { return inf_; }
  const Rational& value() const;

  friend Order operator+(const Order& a, const Order& b) {
    if (a.inf_ || b.inf_) return Order();
    return Order(a.v_ + b.v_);
  }
  friend Order operator-(const Order& a, const Rational& s) { return a.inf_ ? a : Order(a.v_ - s); }
  friend bool operator<(const Order& a, const Order& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator==(const Order& a, const Order& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator!=(const Order& a, const Order& b) { return !(a == b); }
  friend bool operator<=(const Order& a, const Order& b) { return !(b < a); }
  friend bool operator>(const Order& a, const Order& b) { return b < a; }
  friend bool operator>=(const Order& a, const Order& b) { return !(a < b); }

  // True when a term of this weight (or exponent) is below the bound.
  bool covers(const Rational& x) const { return inf_ || x < v_; }
  std::string str() const { return inf_ ? "inf" : v_.get_str(); }

 private:
  bool inf_;
  Rational v_;
};

inline Order min(const Order& a, const Order& b) { return b < a ? b : a; }

}  // namespace shiftop
