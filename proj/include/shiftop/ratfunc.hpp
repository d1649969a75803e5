#pragma once

#include <stdexcept>
#include <string>

#include "shiftop/poly.hpp"

namespace shiftop {

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NonCancellingPole : std::domain_error {
  using std::domain_error::domain_error;
};

// Rational function of the spectral parameter: num/den with gcd(num, den) = 1,
// den monic, and zero stored as 0/1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}  // NOLINT(implicit)
  RatFunc(int c) : RatFunc(Rational(c)) {}          // NOLINT(implicit)
  RatFunc(const Poly& p) : num_(p), den_(1) {}      // NOLINT(implicit)
  RatFunc(const Poly& num, const Poly& den);
  static RatFunc lambda() { return RatFunc(Poly::variable()); }
  static RatFunc affine(const Rational& slope, const Rational& offset) { return RatFunc(Poly::affine(slope, offset)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  Rational constant_value() const;  // throws unless is_constant()

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  Rational eval(const Rational& x) const;  // PoleError where den vanishes
  RatFunc substitute_affine(const Rational& slope, const Rational& offset) const;
  RatFunc shift(const Rational& c) const { return substitute_affine(Rational(1), c); }
  RatFunc derivative() const;
  // Residue at a simple pole x0 (zero when x0 is regular). Higher-order poles throw.
  Rational residue(const Rational& x0) const;
  // Exact division by a polynomial; NonCancellingPole when the result is not polynomial.
  Poly divide_exact(const Poly& d) const;

  std::string str(const std::string& var = "lam") const;

 private:
  void normalise();
  Poly num_, den_;
};

RatFunc pochhammer(const RatFunc& a, unsigned k);

}  // namespace shiftop
