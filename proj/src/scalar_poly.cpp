#include "shiftop/scalar_poly.hpp"

#include <numeric>
#include <sstream>

namespace shiftop {

const char* atom_name(Atom a) {
  switch (a) {
    case Atom::J: return "J";
    case Atom::Psq: return "Psq";
    case Atom::DJ: return "DJ";
  }
  return "?";
}

bool DegLex::operator()(const AtomExponents& a, const AtomExponents& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a > b;
}

ScalarPoly::ScalarPoly(const Rational& c) {
  if (c != 0) t_.emplace(AtomExponents{0, 0, 0}, c);
}

ScalarPoly ScalarPoly::atom(Atom a, int power) {
  AtomExponents e{0, 0, 0};
  e[static_cast<int>(a)] = power;
  return monomial(e, Rational(1));
}

ScalarPoly ScalarPoly::monomial(const AtomExponents& e, const Rational& c) {
  ScalarPoly p;
  p.add_term(e, c);
  return p;
}

void ScalarPoly::add_term(const AtomExponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

bool ScalarPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first == AtomExponents{0, 0, 0});
}

Rational ScalarPoly::constant_term() const {
  auto it = t_.find(AtomExponents{0, 0, 0});
  return it == t_.end() ? Rational(0) : it->second;
}

int ScalarPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : t_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

ScalarPoly ScalarPoly::operator-() const {
  ScalarPoly r = *this;
  for (auto& [e, c] : r.t_) c = -c;
  return r;
}

ScalarPoly& ScalarPoly::operator+=(const ScalarPoly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, c);
  return *this;
}

ScalarPoly& ScalarPoly::operator-=(const ScalarPoly& o) {
  for (const auto& [e, c] : o.t_) add_term(e, -c);
  return *this;
}

ScalarPoly& ScalarPoly::operator*=(const Rational& s) {
  if (s == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [e, c] : t_) c *= s;
  return *this;
}

ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
  ScalarPoly r;
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      AtomExponents e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      r.add_term(e, ca * cb);
    }
  return r;
}

Rational ScalarPoly::einstein_value(const Rational& n, const Rational& mu) const {
  // J = n mu, |P|^2 = n mu^2, Delta J = 0
  Rational total(0);
  for (const auto& [e, c] : t_) {
    if (e[2] > 0) continue;
    total += c * rational_pow(n * mu, e[0]) * rational_pow(n * mu * mu, e[1]);
  }
  return total;
}

std::string ScalarPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool unit = e == AtomExponents{0, 0, 0};
    Rational mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool printed = false;
    if (unit || mag != 1) {
      os << mag.get_str();
      printed = true;
    }
    for (int k = 0; k < kAtomCount; ++k) {
      if (e[k] == 0) continue;
      if (printed) os << "*";
      os << atom_name(static_cast<Atom>(k));
      if (e[k] > 1) os << "^" << e[k];
      printed = true;
    }
    first = false;
  }
  return os.str();
}

}  // namespace shiftop
