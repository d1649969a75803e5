#include "shiftop/ratfunc.hpp"

namespace shiftop {

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalise();
}

void RatFunc::normalise() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
  }
  if (den_.lead() != 1) {
    Rational s = Rational(1) / den_.lead();
    num_ *= s;
    den_ *= s;
  }
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw std::domain_error("coefficient still depends on lambda: " + str());
  return num_.coeff(0);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (is_polynomial() && o.is_polynomial()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalise();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_polynomial() && o.is_polynomial()) {
    num_ *= o.num_;
    if (num_.is_zero()) den_ = Poly(1);
    return *this;
  }
  num_ *= o.num_;
  den_ *= o.den_;
  normalise();
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw std::domain_error("rational function division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalise();
  return *this;
}

Rational RatFunc::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d == 0) throw PoleError("pole at " + x.get_str() + " of " + str());
  return num_.eval(x) / d;
}

RatFunc RatFunc::substitute_affine(const Rational& slope, const Rational& offset) const {
  if (is_constant()) return *this;
  return RatFunc(num_.compose_affine(slope, offset), den_.compose_affine(slope, offset));
}

RatFunc RatFunc::derivative() const {
  if (is_polynomial()) return RatFunc(num_.derivative() * (Rational(1) / den_.lead()));
  return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rational RatFunc::residue(const Rational& x0) const {
  Poly lin = Poly::affine(Rational(1), -x0);
  Poly rest = den_;
  int order = 0;
  while (rest.degree() > 0 && rest.eval(x0) == 0) {
    rest = rest.divmod(lin).first;
    ++order;
  }
  if (order == 0) return Rational(0);
  if (order > 1) throw PoleError("pole of order " + std::to_string(order) + " at " + x0.get_str());
  return num_.eval(x0) / rest.eval(x0);
}

Poly RatFunc::divide_exact(const Poly& d) const {
  if (!is_polynomial()) throw NonCancellingPole("coefficient is not polynomial: " + str());
  auto [q, rem] = num_.divmod(d);
  if (!rem.is_zero()) throw NonCancellingPole("(" + num_.str() + ") not divisible by (" + d.str() + ")");
  return q * (Rational(1) / den_.lead());
}

std::string RatFunc::str(const std::string& var) const {
  if (is_polynomial()) {
    Poly p = num_ * (Rational(1) / den_.lead());
    return p.str(var);
  }
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RatFunc pochhammer(const RatFunc& a, unsigned k) {
  RatFunc r(1);
  for (unsigned i = 0; i < k; ++i) r *= a + RatFunc(Rational(i));
  return r;
}

}  // namespace shiftop
