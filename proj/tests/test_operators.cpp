#include <doctest.h>

#include "shiftop/geometry.hpp"

using namespace shiftop;
using namespace shiftop::letters;

namespace {

const Context kFree{Rational(5), TangentialMode::Free, Rational(0)};

OperatorSeries dr(int b = 1) { return OperatorSeries::d_r(kFree, b); }
OperatorSeries rp(const Rational& a, const RatFunc& c = RatFunc(1)) { return OperatorSeries::r_power(kFree, a, c); }
OperatorSeries term(const Rational& a, int b, const RatFunc& c = RatFunc(1)) {
  OperatorSeries s(kFree);
  s.add(a, b, Word{}, c);
  return s;
}
OperatorSeries word(const Word& w, const RatFunc& c = RatFunc(1)) {
  return OperatorSeries::tangential(kFree, TangentialElement::word(TangentialMode::Free, w, c));
}

bool same(const OperatorSeries& a, const OperatorSeries& b) {
  return a.order() == b.order() && equal_to_order(a, b).equal;
}

}  // namespace

TEST_CASE("normal ordering of d_r past powers of r") {
  CHECK(same(dr() * rp(Rational(1)), term(Rational(1), 1) + OperatorSeries::identity(kFree)));
  CHECK(same(dr(2) * rp(Rational(1)), term(Rational(1), 2) + term(Rational(0), 1, 2)));
  CHECK(same(dr() * rp(Rational(1, 2)), term(Rational(1, 2), 1) + term(Rational(-1, 2), 0, Rational(1, 2))));
  // tangential words commute with r and d_r
  CHECK(same(word(Word{LAP}) * dr(), dr() * word(Word{LAP})));
  CHECK((word(Word{LAP}) * word(Word{MULT_J})).coeff(TermKey{Rational(0), 0, Word{LAP, MULT_J}}) == RatFunc(1));
}

TEST_CASE("conjugation by powers of r") {
  const Rational a(3, 2);
  CHECK(same(dr().conjugate_by_power(a), dr() + rp(Rational(-1), a)));
  CHECK(same(OperatorSeries::identity(kFree).conjugate_by_power(Rational(-7, 3)), OperatorSeries::identity(kFree)));
  CHECK(same(dr(2).r_left(Rational(1)), term(Rational(1), 2)));
}

TEST_CASE("restriction to the boundary") {
  CHECK(term(Rational(1), 2).restrict_boundary().is_zero());
  BoundaryOperator b = (term(Rational(0), 1, 3) + term(Rational(2), 0)).restrict_boundary();
  CHECK(b == BoundaryOperator::derivative(kFree, 1, 3));

  // Nothing certifies the exponent-0 part of a series known only below weight 0.
  OperatorSeries vague(kFree, Order(Rational(0)));
  CHECK_THROWS_AS(vague.restrict_boundary(), TruncationInsufficient);
}

TEST_CASE("comparison up to an order") {
  OperatorSeries e = term(Rational(1), 1);
  CHECK(equal_to_order(e, e, Order(Rational(5))).equal);
  Comparison c = equal_to_order(e, e + rp(Rational(6)), Order(Rational(5)));
  CHECK(c.equal);
  CHECK(c.compared == Order(Rational(5)));
  Comparison d = equal_to_order(e, e + rp(Rational(6)));
  CHECK_FALSE(d.equal);
  CHECK(same(d.difference, -rp(Rational(6))));
  // truncation limits the window
  OperatorSeries t = (e + rp(Rational(6))).truncated(Order(Rational(3)));
  CHECK(equal_to_order(t, e).compared == Order(Rational(3)));
}

TEST_CASE("truncation order of a composition") {
  OperatorSeries a = (OperatorSeries::identity(kFree) + rp(Rational(2))).truncated(Order(Rational(4)));
  OperatorSeries b = (dr() + rp(Rational(1))).truncated(Order(Rational(5)));
  OperatorSeries ab = a * b;
  // unknown tail of a (weight >= 4) against d_r (weight -1)
  CHECK(ab.order() == Order(Rational(3)));
  CHECK(equal_to_order(ab, dr() + rp(Rational(2)) * dr() + rp(Rational(1)) + rp(Rational(3))).equal);
}

TEST_CASE("lambda derivatives") {
  RatFunc lin = RatFunc::affine(Rational(2), Rational(-4));
  OperatorSeries s = term(Rational(0), 1, lin);
  CHECK(same(s.lambda_diff(), term(Rational(0), 1, 2)));
  CHECK(s.lambda_diff(2).is_zero());
  OperatorSeries frac = term(Rational(0), 0, RatFunc(1) / RatFunc::lambda());
  CHECK_THROWS(frac.lambda_diff());
}

TEST_CASE("formal adjoints") {
  ScalarSeries one = ScalarSeries::constant(1);
  // the adjoint is cut at the cap; compare coefficients below it
  OperatorSeries a = adjoint(dr(), one, Rational(8));
  CHECK(a.order() == Order(Rational(7)));
  CHECK(equal_to_order(a, -dr()).equal);
  OperatorSeries e = rp(Rational(2)) * dr(2) + word(Word{LAP, MULT_J}) * dr();
  CHECK(equal_to_order(adjoint(adjoint(e, one, Rational(8)), one, Rational(8)), e).equal);
  CHECK_THROWS_AS(adjoint(word(Word{GJD}), one, Rational(8)), AdjointRuleUnavailable);
  AdjointRules rules{{GJD, TangentialElement::word(TangentialMode::Free, Word{GJD}, -1) +
                               TangentialElement::word(TangentialMode::Free, Word{MULT_DJ}, -1)}};
  CHECK(adjoint(TangentialElement::word(TangentialMode::Free, Word{GJD}), rules) == rules.at(GJD));
}

TEST_CASE("product rule normal form") {
  using TE = TangentialElement;
  const auto F = TangentialMode::Free;
  TE lhs = TE::word(F, Word{LAP, MULT_J});
  TE rhs = TE::word(F, Word{MULT_J, LAP}) + TE::word(F, Word{MULT_DJ}) + TE::word(F, Word{GJD}, 2);
  CHECK_FALSE(lhs == rhs);
  CHECK(lhs.leibniz_normal() == rhs.leibniz_normal());
  CHECK(TE::word(F, Word{MULT_J, MULT_Psq}).leibniz_normal() == TE::word(F, Word{MULT_Psq, MULT_J}).leibniz_normal());
}

TEST_CASE("Einstein mode reduces tangential words") {
  const Rational n(5), mu(3, 7);
  using TE = TangentialElement;
  TE t = TE::word(TangentialMode::Free, Word{DPD}) + TE::word(TangentialMode::Free, Word{MULT_Psq}) +
         TE::word(TangentialMode::Free, Word{GJD});
  TE expected = TE::lap_power(TangentialMode::Einstein, 1, RatFunc(-mu)) + TE::scalar(TangentialMode::Einstein, RatFunc(Rational(n * mu * mu)));
  CHECK(t.reduce_einstein(n, mu) == expected);
}

TEST_CASE("serialization is ordered and repeatable") {
  OperatorSeries e = rp(Rational(3)) * dr() + rp(Rational(-1, 2)) + word(Word{LAP}) * dr(2);
  std::string s = e.serialize();
  CHECK(s == (word(Word{LAP}) * dr(2) + rp(Rational(-1, 2)) + rp(Rational(3)) * dr()).serialize());
  CHECK(s.find("-1/2") < s.find("3"));
  CHECK_FALSE(s.empty());
}

TEST_CASE("truncation records the derivative degree of dropped terms") {
  OperatorSeries e = term(Rational(0), 1) + term(Rational(7), 3);
  OperatorSeries t = e.truncated(Order(Rational(2)));
  CHECK(t.terms().size() == 1);
  CHECK(t.tail_deriv() == 3);
  CHECK(t.order() == Order(Rational(2)));
}
