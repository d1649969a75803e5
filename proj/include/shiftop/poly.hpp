#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shiftop/rational.hpp"

namespace shiftop {

// Dense univariate polynomial over Q in the spectral parameter.
// Trailing zero coefficients are never stored; the zero polynomial is empty.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(implicit)
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(implicit)
  static Poly from_coeffs(std::vector<Rational> coeffs);
  static Poly variable();
  static Poly affine(const Rational& slope, const Rational& offset);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Rational& coeff(int k) const;
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division; throws on zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;
  Rational eval(const Rational& x) const;
  Poly derivative() const;
  // p(a*x + b)
  Poly compose_affine(const Rational& a, const Rational& b) const;

  std::string str(const std::string& var = "lam") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

Poly gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0
Poly pochhammer(const Poly& a, unsigned k);

}  // namespace shiftop
