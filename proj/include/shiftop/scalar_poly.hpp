#pragma once

#include <array>
#include <map>
#include <string>

#include "shiftop/rational.hpp"

namespace shiftop {

// Atoms of the commutative scalar algebra: J, |P|^2 and Delta J.
enum class Atom : int { J = 0, Psq = 1, DJ = 2 };
inline constexpr int kAtomCount = 3;
const char* atom_name(Atom a);

using AtomExponents = std::array<int, kAtomCount>;

struct DegLex {
  bool operator()(const AtomExponents& a, const AtomExponents& b) const;
};

class ScalarPoly {
 public:
  using Terms = std::map<AtomExponents, Rational, DegLex>;

  ScalarPoly() = default;
  ScalarPoly(const Rational& c);  // NOLINT(implicit)
  ScalarPoly(int c) : ScalarPoly(Rational(c)) {}  // NOLINT(implicit)
  static ScalarPoly atom(Atom a, int power = 1);
  static ScalarPoly monomial(const AtomExponents& e, const Rational& c);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;

  ScalarPoly operator-() const;
  ScalarPoly& operator+=(const ScalarPoly& o);
  ScalarPoly& operator-=(const ScalarPoly& o);
  ScalarPoly& operator*=(const Rational& s);
  friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
  friend ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
  friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b);
  friend ScalarPoly operator*(ScalarPoly a, const Rational& s) { return a *= s; }
  friend bool operator==(const ScalarPoly& a, const ScalarPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const ScalarPoly& a, const ScalarPoly& b) { return !(a == b); }

  // Value for an Einstein metric with Schouten tensor mu*h in dimension n.
  Rational einstein_value(const Rational& n, const Rational& mu) const;

  std::string str() const;

 private:
  void add_term(const AtomExponents& e, const Rational& c);
  Terms t_;
};

}  // namespace shiftop
