#include "shiftop/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace shiftop {

namespace {
const Rational kZero(0);
}

Poly::Poly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Poly Poly::from_coeffs(std::vector<Rational> coeffs) {
  Poly p;
  p.c_ = std::move(coeffs);
  p.trim();
  return p;
}

Poly Poly::variable() { return from_coeffs({Rational(0), Rational(1)}); }

Poly Poly::affine(const Rational& slope, const Rational& offset) { return from_coeffs({offset, slope}); }

const Rational& Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[k];
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  return Poly::from_coeffs(std::move(out));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly q, r = *this;
  if (degree() < d.degree()) return {q, r};
  q.c_.assign(degree() - d.degree() + 1, Rational(0));
  const Rational inv = Rational(1) / d.lead();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int shift = r.degree() - d.degree();
    Rational f = r.lead() * inv;
    q.c_[shift] = f;
    for (int i = 0; i <= d.degree(); ++i) r.c_[i + shift] -= f * d.c_[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  r *= Rational(1) / lead();
  return r;
}

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<long>(i);
  return from_coeffs(std::move(out));
}

Poly Poly::compose_affine(const Rational& a, const Rational& b) const {
  Poly lin = affine(a, b), acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + Poly(*it);
  return acc;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (k == 0 || mag != 1) os << mag.get_str();
    if (k > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly pochhammer(const Poly& a, unsigned k) {
  Poly r(1);
  for (unsigned i = 0; i < k; ++i) r *= a + Poly(Rational(i));
  return r;
}

}  // namespace shiftop
