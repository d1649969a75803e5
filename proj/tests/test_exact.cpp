#include <doctest.h>

#include <random>

#include "shiftop/ratfunc.hpp"
#include "shiftop/scalar_series.hpp"
#include "shiftop/tangential.hpp"

using namespace shiftop;

namespace {

Poly lam() { return Poly::variable(); }

Poly random_poly(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<int> c(-5, 5);
  std::vector<Rational> co;
  for (int k = 0; k <= deg; ++k) {
    int p = c(rng);
    co.push_back(ratio(p, 1 + (c(rng) + 5) % 3));
  }
  return Poly::from_coeffs(co);
}

RatFunc random_ratfunc(std::mt19937_64& rng) {
  Poly d;
  while (d.is_zero()) d = random_poly(rng, 2);
  return RatFunc(random_poly(rng, 3), d);
}

bool canonical(const RatFunc& f) {
  if (f.is_zero()) return f.den() == Poly(1);
  return f.den().lead() == 1 && gcd(f.num(), f.den()).degree() == 0;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(parse_rational("+1/3") == Rational(1, 3));
  CHECK(to_string(parse_rational(" -10/4 ")) == "-5/2");
  CHECK_THROWS_AS(parse_rational("1/-4"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
}

TEST_CASE("combinatorial helpers") {
  CHECK(pochhammer(Rational(7), 0) == 1);
  CHECK(pochhammer(Rational(-2), 2) == 2);
  CHECK(pochhammer(Rational(-4), 2) == 12);
  CHECK(falling(Rational(5), 3) == 60);
  CHECK(factorial(6) == 720);
  CHECK(binomial(6, 2) == 15);
  CHECK(double_factorial(7) == 105);
  CHECK(double_factorial(-1) == 1);
  CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK_THROWS(to_long(Rational(1, 2)));
}

TEST_CASE("polynomial division and gcd") {
  Poly p = (lam() - 1) * (lam() + 2) * (lam() * Rational(3) + 1);
  Poly q = (lam() + 2) * (lam() - Rational(1, 2));
  auto [quo, rem] = p.divmod(q);
  CHECK(quo * q + rem == p);
  CHECK(rem.degree() < q.degree());
  CHECK(gcd(p, q) == lam() + 2);
  CHECK(gcd(Poly(), Poly()).is_zero());
  CHECK_THROWS(p.divmod(Poly()));
  CHECK(p.eval(Rational(1)) == 0);
  CHECK(Poly::affine(Rational(2), Rational(-4)).compose_affine(Rational(1), Rational(5)) ==
        Poly::affine(Rational(2), Rational(6)));
  CHECK((lam() * lam() * lam()).derivative() == lam() * lam() * Rational(3));
}

TEST_CASE("rational functions stay canonical") {
  RatFunc f(lam() * Rational(2) - 2, lam() * lam() * Rational(4) - 4);  // 2(l-1) / 4(l-1)(l+1)
  CHECK(f == RatFunc(Poly(Rational(1, 2)), lam() + 1));
  CHECK(f.den().lead() == 1);
  CHECK((f - f).is_zero());
  CHECK((f - f).den() == Poly(1));
  CHECK_THROWS(RatFunc(1) / RatFunc(0));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    RatFunc x = random_ratfunc(rng), y = random_ratfunc(rng), z = random_ratfunc(rng);
    CHECK((x + y) * z == x * z + y * z);
    if (!x.is_zero()) CHECK(x / x == RatFunc(1));
    CHECK(canonical(x * y + z));
    CHECK(canonical(x / (z + 1)));
  }
}

TEST_CASE("rational function evaluation, substitution and residues") {
  const Rational n(5);
  // 1/(2(n-2l-2)) has residue -1/4 at l = n/2 - 1
  RatFunc f = RatFunc(1) / RatFunc(Poly::affine(Rational(-4), 2 * (n - 2)));
  CHECK(f.residue(n / 2 - 1) == Rational(-1, 4));
  CHECK(f.residue(Rational(0)) == 0);
  CHECK_THROWS_AS(f.eval(n / 2 - 1), PoleError);
  CHECK_THROWS(((f * f)).residue(n / 2 - 1));

  RatFunc g = RatFunc::affine(Rational(2), 1 - n);  // 2l - n + 1
  CHECK(g.shift(n - 2) == RatFunc::affine(Rational(2), Rational(2)));

  // (-2N)_N (l + (n+1)/2 - 2N)_N at N = 1, n = 3, l = 0
  RatFunc norm = pochhammer(RatFunc(-2), 1) * pochhammer(RatFunc::affine(Rational(1), Rational(2) - 2), 1);
  CHECK(norm.eval(Rational(0)) == 0);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    Poly p = random_poly(rng, 4);
    Rational c(int(rng() % 11) - 5, 1 + int(rng() % 4));
    RatFunc h(p, Poly::affine(Rational(1), -c));
    CHECK(h.residue(c) == p.eval(c));
  }

  CHECK(RatFunc(lam() * lam() - 1).divide_exact(lam() - 1) == lam() + 1);
  CHECK_THROWS_AS(RatFunc(lam()).divide_exact(lam() - 1), NonCancellingPole);
}

TEST_CASE("scalar series transcendental operations") {
  ScalarPoly J = ScalarPoly::atom(Atom::J), P = ScalarPoly::atom(Atom::Psq);
  ScalarPoly v2 = J * Rational(-1, 2), v4 = (J * J - P) * Rational(1, 8);

  ScalarSeries s(Order(Rational(6)));
  s.add(Rational(0), 1);
  s.add(Rational(2), v2);
  ScalarSeries root = s.sqrt(Rational(6));
  CHECK(root.coeff(Rational(2)) == v2 * Rational(1, 2));
  CHECK(root.coeff(Rational(4)) == v2 * v2 * Rational(-1, 8));
  CHECK((root * root).agrees_with(s));
  CHECK((s.reciprocal(Rational(6)) * s).agrees_with(ScalarSeries::constant(1)));

  ScalarSeries v(Order(Rational(6)));
  v.add(Rational(0), 1);
  v.add(Rational(2), v2);
  v.add(Rational(4), v4);
  ScalarSeries dl = v.log_derivative(Rational(6));
  CHECK(dl.coeff(Rational(1)) == v2 * Rational(2));
  CHECK(dl.coeff(Rational(3)) == v4 * Rational(4) - v2 * v2 * Rational(2));
  CHECK(dl.coeff(Rational(3)) == P * Rational(-1, 2));
  CHECK((dl * v).agrees_with(v.derivative()));
  CHECK(v.derivative().order() == Order(Rational(5)));

  ScalarSeries bad(Order(Rational(4)));
  bad.add(Rational(0), 2);
  CHECK_THROWS(bad.sqrt(Rational(4)));
}

TEST_CASE("scalar application of tangential words") {
  using namespace letters;
  const Rational n(5), mu(0);
  ScalarPoly J = ScalarPoly::atom(Atom::J);
  CHECK(apply_word(Word{LAP}, 1, TangentialMode::Free, n, mu).is_zero());
  CHECK(apply_word(Word{LAP}, J, TangentialMode::Free, n, mu) == ScalarPoly::atom(Atom::DJ));
  CHECK(apply_word(Word{MULT_J, MULT_J}, 1, TangentialMode::Free, n, mu) == J * J);
  CHECK(apply_word(Word{GJD}, 3, TangentialMode::Free, n, mu).is_zero());
  CHECK_THROWS_AS(apply_word(Word{LAP}, J * J, TangentialMode::Free, n, mu), UnreducibleApplication);
}
