#include <doctest.h>

#include "shiftop/conformal.hpp"

using namespace shiftop;
using namespace shiftop::letters;

namespace {

bool same(const OperatorSeries& a, const OperatorSeries& b) { return equal_to_order(a, b).equal; }

}  // namespace

TEST_CASE("flat jets") {
  const Rational n(5);
  GeometryJets g = flat_jets(n, 10);
  CHECK(g.trace.is_zero());
  CHECK(g.dlogv.is_zero());
  CHECK(g.v.coeff(Rational(0)) == ScalarPoly(1));
  CHECK(g.v.terms().size() == 1);
  OperatorSeries lap = OperatorSeries::tangential(g.ctx, TangentialElement::lap_power(g.ctx.mode, 1)) +
                       OperatorSeries::d_r(g.ctx, 2);
  CHECK(same(g.lap_bar, lap));
  OperatorSeries gplus = lap.r_left(Rational(2)) - OperatorSeries::d_r(g.ctx).r_left(Rational(1)) * RatFunc(Rational(n - 1));
  CHECK(same(g.lap_gplus, gplus));
  // P(lam) = S(g_hyp; lam - 2)
  CHECK(same(shift_operator(g, RatFunc::affine(Rational(1), Rational(-2))), flat_shift_P(g.ctx, RatFunc::lambda())));
}

TEST_CASE("Einstein jets with mu = 0 are the flat jets") {
  GeometryJets e = einstein_jets(Rational(7), Rational(0), 10), f = flat_jets(Rational(7), 10);
  CHECK(same(e.lap_bar, f.lap_bar));
  CHECK(same(e.lap_gplus, f.lap_gplus));
  CHECK(e.v.agrees_with(f.v));
}

TEST_CASE("Einstein jets: volume and sphere") {
  const Rational n(5), mu(1, 2);
  const int K = 12;
  GeometryJets g = einstein_jets(n, mu, K);
  ScalarSeries v = ScalarSeries::binomial_r2(Rational(-1, 4), n, Rational(K));
  CHECK(g.v.agrees_with(v, Order(Rational(K))));
  CHECK((g.w * g.w).agrees_with(g.v, Order(Rational(K))));
  CHECK(g.v.coeff(Rational(2)).constant_term() == -n * mu / 2);
  CHECK((g.dlogv * g.v).agrees_with(g.v.derivative(), Order(Rational(K - 1))));
  CHECK_THROWS(einstein_jets(n, mu, 3));
}

TEST_CASE("generic jets") {
  const Rational n(7);
  GeometryJets g = generic_jets(n);
  const auto F = TangentialMode::Free;
  CHECK(g.lap_bar.order() == Order(Rational(4)));
  CHECK(g.lap_bar.coefficient(Rational(1), 1) == TangentialElement::word(F, Word{MULT_J}, -1));
  CHECK(g.lap_bar.coefficient(Rational(2), 0) ==
        TangentialElement::word(F, Word{DPD}, -1) + TangentialElement::word(F, Word{GJD}, Rational(-1, 2)));
  CHECK(g.lap_bar.coefficient(Rational(3), 1) == TangentialElement::word(F, Word{MULT_Psq}, Rational(-1, 2)));
  CHECK(g.dlogv.coeff(Rational(3)) == ScalarPoly::atom(Atom::Psq) * Rational(-1, 2));
  CHECK(g.v.order() == Order(Rational(5)));
  CHECK((g.w * g.w).agrees_with(g.v));
}

TEST_CASE("generic jets reduce to Einstein jets") {
  const Rational n(5), mu(3, 7);
  GeometryJets r = reduce_to_einstein(generic_jets(n), mu), e = einstein_jets(n, mu, 12);
  CHECK(r.ctx == e.ctx);
  CHECK(equal_to_order(r.lap_bar, e.lap_bar, r.lap_bar.order()).equal);
  CHECK(r.v.agrees_with(e.v));
}

TEST_CASE("jet extensions raise the generic order") {
  JetExtension ext;
  ext.lap_bar[4].push_back(JetExtensionTerm{Word{MULT_Psq}, 2, Rational(3)});
  ext.v[5] = ScalarPoly(0);
  ext.v[6] = ScalarPoly::atom(Atom::J, 3);
  GeometryJets g = generic_jets(Rational(5), ext);
  GeometryJets plain = generic_jets(Rational(5));
  CHECK(plain.lap_bar.order() < g.lap_bar.order());
  // an order-k term with d_r degree b sits at r^(k+b) d_r^b
  CHECK(g.lap_bar.coefficient(Rational(6), 2) == TangentialElement::word(TangentialMode::Free, Word{MULT_Psq}, 3));
  CHECK(plain.v.order() < g.v.order());
}
