#include <doctest.h>

#include "shiftop/conformal.hpp"

using namespace shiftop;
using namespace shiftop::letters;

namespace {

using TE = TangentialElement;
const auto F = TangentialMode::Free;
const auto E = TangentialMode::Einstein;

RatFunc lam() { return RatFunc::lambda(); }
ScalarPoly J() { return ScalarPoly::atom(Atom::J); }
ScalarPoly Psq() { return ScalarPoly::atom(Atom::Psq); }
ScalarPoly DJ() { return ScalarPoly::atom(Atom::DJ); }

}  // namespace

TEST_CASE("explicit delta families") {
  const Rational n(7);
  GeometryJets g = generic_jets(n);
  CHECK(delta_explicit(g, 1) == BoundaryOperator::derivative(g.ctx, 1));
  BoundaryOperator d2 = delta_explicit(g, 2);
  RatFunc c = RatFunc(1) / RatFunc::affine(Rational(-4), 2 * (n - 2));
  CHECK(d2.coefficient(2) == TE::scalar(F, Rational(1, 2)));
  CHECK(d2.coefficient(0) == TE::word(F, Word{LAP}, c) + TE::word(F, Word{MULT_J}, c * RatFunc::affine(Rational(1), 2 - n)));
  BoundaryOperator d3 = delta_explicit(g, 3);
  CHECK(d3.coefficient(3) == TE::scalar(F, Rational(1, 6)));
  CHECK(d3.coefficient(1) == d2.coefficient(0));
  CHECK_THROWS(delta_explicit(g, 4));
}

TEST_CASE("restricted shift operators, generic metric") {
  const Rational n(5);
  GeometryJets g = generic_jets(n);
  BoundaryOperator s1 = iterated_shift(g, lam(), 1).restrict_boundary();
  CHECK(s1 == BoundaryOperator::derivative(g.ctx, 1, -RatFunc::affine(Rational(2), 1 - n)));
  // iota^* S_2(n/2 - 1) = P_2 iota^*
  BoundaryOperator s2 = iterated_shift(g, RatFunc(n / 2 - 1), 2).restrict_boundary();
  BoundaryOperator p2(g.ctx);
  p2.add(0, Word{LAP}, 1);
  p2.add(0, Word{MULT_J}, Rational(-(n - 2) / 2));
  CHECK(s2 == p2);
}

TEST_CASE("shift operator identities on Einstein metrics") {
  const Rational n(5), mu(3, 7);
  GeometryJets g = einstein_jets(n, mu, 12);
  // S(lam) at lam = (n-1)/2 is r P_2(gbar)
  CHECK(equal_to_order(shift_operator(g, RatFunc((n - 1) / 2)), yamabe_bar(g).r_left(Rational(1))).equal);
  // S(n-1) kills constants
  ScalarSeries one = ScalarSeries::constant(1, Order(Rational(12)));
  CHECK(shift_operator(g, RatFunc(n - 1)).apply(one).terms().empty());
  // definition and conjugation forms agree at sample points
  for (Rational l : {Rational(1, 3), Rational(2), Rational(-5, 2)})
    CHECK(equal_to_order(shift_operator(g, RatFunc(l)), shift_operator_conjugated(g, l)).equal);
  // odd-order tangential vanishing
  CHECK(iterated_shift(g, RatFunc((n + 1) / 2 - 2), 3).restrict_boundary().is_zero());
  // (1/1!) d/dlam S_1 = -2 d_r^w
  CHECK(equal_to_order(shift_operator(g, lam()).lambda_diff(), ddr_w(g) * RatFunc(-2)).equal);
}

TEST_CASE("iterated shift of the flat model") {
  const Rational n(3);
  GeometryJets g = flat_jets(n, 8);
  BoundaryOperator s2 = iterated_shift(g, lam(), 2).restrict_boundary();
  RatFunc norm = pochhammer(RatFunc(-2), 2) * pochhammer(RatFunc::affine(Rational(2), 1 - n), 2);
  CHECK(s2 == delta_explicit(g, 2) * norm);
}

TEST_CASE("GJMS operators of Einstein metrics") {
  const Rational n(7), mu(1, 2);
  GeometryJets g = einstein_jets(n, mu, 12), f = flat_jets(n, 12);
  CHECK(gjms_boundary(g, 1) == TE::lap_power(E, 1) + TE::scalar(E, Rational(-(n / 2 - 1) * n * mu)));
  CHECK(gjms_boundary(f, 3) == TE::lap_power(E, 3));
  // P_4 applied to 1 is (n/2 - 2) Q_4
  ScalarPoly p41 = gjms_boundary(g, 2).apply(ScalarPoly(1), n, mu);
  CHECK(p41.constant_term() == (n / 2 - 2) * q_closed(g, 2).einstein_value(n, mu));
  // flat P_2(gbar)
  OperatorSeries lap = OperatorSeries::tangential(f.ctx, TE::lap_power(E, 1)) + OperatorSeries::d_r(f.ctx, 2);
  CHECK(equal_to_order(gjms_bar(f, 1), lap).equal);
}

TEST_CASE("Q-curvature formulas") {
  CHECK(q_closed(generic_jets(Rational(6)), 2) == J() * J() * Rational(3) - Psq() * Rational(2) - DJ());
  CHECK(q_closed(generic_jets(Rational(4)), 2) == J() * J() * Rational(2) - Psq() * Rational(2) - DJ());
  CHECK(q_closed(generic_jets(Rational(2)), 1) == J());
  CHECK(q_holographic(generic_jets(Rational(2)), 1) == J());
  CHECK(q_holographic(generic_jets(Rational(4)), 2) == J() * J() * Rational(2) - Psq() * Rational(2) - DJ());
  CHECK(q_holographic(generic_jets(Rational(7)), 2) == q_closed(generic_jets(Rational(7)), 2));
  GeometryJets e = einstein_jets(Rational(5), Rational(-1), 12);
  CHECK(q_holographic(e, 1).einstein_value(Rational(5), Rational(-1)) == Rational(-5));
}

TEST_CASE("solution operators of Einstein metrics") {
  const Rational n(5), mu(3, 7);
  GeometryJets g = einstein_jets(n, mu, 14);
  std::vector<TE> T = solution_operators(g, 3);
  REQUIRE(T.size() == 4);
  CHECK(T[0] == TE::scalar(E, 1));
  RatFunc c = RatFunc(1) / RatFunc::affine(Rational(-4), 2 * (n - 2));
  CHECK(T[1] == TE::lap_power(E, 1, c) + TE::scalar(E, c * lam() * RatFunc(-n * mu)));
  TE res = residue_at(T[1], n / 2 - 1);
  CHECK(res == gjms_boundary(g, 1) * RatFunc(Rational(-1, 4)));
  CHECK(residue_at(T[2], n / 2 - 2) == gjms_boundary(g, 2) * RatFunc(Rational(-1, 32)));
}

TEST_CASE("building blocks") {
  GeometryJets f = flat_jets(Rational(5), 12);
  CHECK(building_block(f, 2).is_zero());
  GeometryJets s = einstein_jets(Rational(3), Rational(1, 2), 14);
  CHECK(equal_to_order(building_block(s, 2), sphere_building_block(s, 2)).equal);
  CHECK(equal_to_order(building_block(s, 2).r_left(Rational(1)),
                       (ddr_w(s) * building_block(s, 1) - building_block(s, 1) * ddr_w(s)) * RatFunc(2))
            .equal);
}

TEST_CASE("degenerate Laplacian") {
  const Rational n(5), mu(3, 7);
  GeometryJets g = einstein_jets(n, mu, 12);
  CHECK(degenerate_laplacian(g, RatFunc(0)).restrict_boundary() == BoundaryOperator::derivative(g.ctx, 1, Rational(n - 1)));
  OperatorSeries d = degenerate_laplacian(g, RatFunc::affine(Rational(1), 1 - n));
  CHECK(equal_to_order(shift_operator(g, lam()) + d, OperatorSeries(g.ctx)).equal);
}

TEST_CASE("truncated restriction matches the full composition") {
  GeometryJets e = einstein_jets(Rational(5), Rational(3, 7), 14), g = generic_jets(Rational(7));
  for (int N = 1; N <= 5; ++N)
    CHECK(restricted_shift(e, RatFunc(Rational(1, 3)), N) == iterated_shift(e, RatFunc(Rational(1, 3)), N).restrict_boundary());
  CHECK(restricted_shift(e, lam(), 3) == iterated_shift(e, lam(), 3).restrict_boundary());
  for (int N = 1; N <= 3; ++N) CHECK(restricted_shift(g, lam(), N) == iterated_shift(g, lam(), N).restrict_boundary());
  CHECK_THROWS_AS(restricted_shift(g, lam(), 6), TruncationInsufficient);
}
