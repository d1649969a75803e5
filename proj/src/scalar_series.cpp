#include "shiftop/scalar_series.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace shiftop {

namespace {

// Dense view on the lattice step*Z_{>=0} spanned by the exponents.
struct Dense {
  Rational step;
  std::vector<ScalarPoly> c;
};

Dense densify(const ScalarSeries& s, const Rational& bound) {
  mpz_class l = 1;
  for (const auto& [e, c] : s.terms()) {
    if (e < 0) throw std::domain_error("series with negative exponents");
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
  }
  if (bound.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), bound.get_den_mpz_t());
  Dense d;
  d.step = Rational(1, 1) / Rational(l);
  Rational slots = bound / d.step;
  long n = slots < 0 ? 0 : to_long(slots);
  d.c.assign(static_cast<std::size_t>(n), ScalarPoly());
  for (const auto& [e, c] : s.terms()) {
    long k = to_long(e / d.step);
    if (k < n) d.c[k] = c;
  }
  return d;
}

ScalarSeries sparsify(const Dense& d, const Rational& bound) {
  ScalarSeries out{Order(bound)};
  for (std::size_t k = 0; k < d.c.size(); ++k) out.add(d.step * static_cast<long>(k), d.c[k]);
  return out;
}

Rational effective_cap(const ScalarSeries& s, const Rational& cap) {
  if (s.order().is_infinite() || cap < s.order().value()) return cap;
  return s.order().value();
}

void require_unit(const ScalarSeries& s) {
  if (s.coeff(Rational(0)) != ScalarPoly(1)) throw std::domain_error("series needs constant term 1");
}

}  // namespace

ScalarSeries ScalarSeries::constant(const ScalarPoly& c, Order order) { return monomial(Rational(0), c, std::move(order)); }

ScalarSeries ScalarSeries::monomial(const Rational& exp, const ScalarPoly& c, Order order) {
  ScalarSeries s{std::move(order)};
  s.add(exp, c);
  return s;
}

ScalarSeries ScalarSeries::binomial_r2(const Rational& c, const Rational& p, const Rational& order) {
  ScalarSeries s{Order(order)};
  Rational coef(1);
  for (long j = 0; 2 * j < order; ++j) {
    s.add(Rational(2 * j), ScalarPoly(coef * rational_pow(c, j)));
    coef = coef * (p - j) / (j + 1);
  }
  return s;
}

ScalarPoly ScalarSeries::coeff(const Rational& exp) const {
  auto it = t_.find(exp);
  return it == t_.end() ? ScalarPoly() : it->second;
}

std::optional<Rational> ScalarSeries::min_exponent() const {
  if (t_.empty()) return std::nullopt;
  return t_.begin()->first;
}

void ScalarSeries::add(const Rational& exp, const ScalarPoly& c) {
  if (c.is_zero() || !order_.covers(exp)) return;
  auto [it, fresh] = t_.try_emplace(exp, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

ScalarSeries ScalarSeries::truncated(const Order& order) const {
  ScalarSeries out{min(order_, order)};
  for (const auto& [e, c] : t_) out.add(e, c);
  return out;
}

ScalarSeries ScalarSeries::operator-() const {
  ScalarSeries r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

ScalarSeries operator+(const ScalarSeries& a, const ScalarSeries& b) {
  ScalarSeries out{min(a.order_, b.order_)};
  for (const auto& [e, c] : a.t_) out.add(e, c);
  for (const auto& [e, c] : b.t_) out.add(e, c);
  return out;
}

ScalarSeries operator*(const ScalarSeries& a, const ScalarSeries& b) {
  Order o = Order::infinite();
  if (auto mb = b.min_exponent()) o = min(o, a.order_ + Order(*mb));
  if (auto ma = a.min_exponent()) o = min(o, b.order_ + Order(*ma));
  if (a.is_zero() || b.is_zero()) o = Order::infinite();
  ScalarSeries out{o};
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) out.add(ea + eb, ca * cb);
  return out;
}

ScalarSeries operator*(const ScalarSeries& a, const Rational& s) {
  ScalarSeries out{a.order_};
  for (const auto& [e, c] : a.t_) out.add(e, c * s);
  return out;
}

ScalarSeries ScalarSeries::shifted(const Rational& by) const {
  ScalarSeries out{order_.is_infinite() ? order_ : Order(order_.value() + by)};
  for (const auto& [e, c] : t_) out.add(e + by, c);
  return out;
}

ScalarSeries ScalarSeries::derivative() const {
  ScalarSeries out{order_ - Rational(1)};
  for (const auto& [e, c] : t_)
    if (e != 0) out.add(e - 1, c * e);
  return out;
}

ScalarSeries ScalarSeries::reciprocal(const Rational& cap) const {
  require_unit(*this);
  Rational bound = effective_cap(*this, cap);
  Dense s = densify(*this, bound), r{s.step, std::vector<ScalarPoly>(s.c.size())};
  if (!r.c.empty()) r.c[0] = ScalarPoly(1);
  for (std::size_t k = 1; k < r.c.size(); ++k) {
    ScalarPoly acc;
    for (std::size_t i = 1; i <= k; ++i)
      if (!s.c[i].is_zero() && !r.c[k - i].is_zero()) acc -= s.c[i] * r.c[k - i];
    r.c[k] = acc;
  }
  return sparsify(r, bound);
}

ScalarSeries ScalarSeries::sqrt(const Rational& cap) const {
  require_unit(*this);
  Rational bound = effective_cap(*this, cap);
  Dense s = densify(*this, bound), w{s.step, std::vector<ScalarPoly>(s.c.size())};
  if (!w.c.empty()) w.c[0] = ScalarPoly(1);
  for (std::size_t k = 1; k < w.c.size(); ++k) {
    ScalarPoly acc = s.c[k];
    for (std::size_t i = 1; i < k; ++i)
      if (!w.c[i].is_zero() && !w.c[k - i].is_zero()) acc -= w.c[i] * w.c[k - i];
    w.c[k] = acc * Rational(1, 2);
  }
  return sparsify(w, bound);
}

ScalarSeries ScalarSeries::log_derivative(const Rational& cap) const {
  return (derivative() * reciprocal(cap)).truncated(Order(effective_cap(*this, cap) - 1));
}

bool ScalarSeries::agrees_with(const ScalarSeries& other, const Order& limit) const {
  Order o = min(min(order_, other.order_), limit);
  ScalarSeries d = (*this - other).truncated(o);
  return d.is_zero();
}

std::string ScalarSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : t_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")*r^" << e.get_str();
    first = false;
  }
  if (first) os << "0";
  os << " + O(r^" << order_.str() << ")";
  return os.str();
}

}  // namespace shiftop
