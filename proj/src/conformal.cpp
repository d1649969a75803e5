#include "shiftop/conformal.hpp"

namespace shiftop {

namespace {

RatFunc rf(const Rational& q) { return RatFunc(q); }

OperatorSeries mult(const GeometryJets& g, const ScalarSeries& s) { return OperatorSeries::multiplication(g.ctx, s); }

OperatorSeries d(const GeometryJets& g, int b = 1) { return OperatorSeries::d_r(g.ctx, b); }

const ScalarSeries& require_jbar(const GeometryJets& g) {
  if (!g.j_bar) throw std::invalid_argument("J(gbar) is not available for " + g.label());
  return *g.j_bar;
}

TangentialElement mult_J(const GeometryJets& g, const RatFunc& c = RatFunc(1)) {
  return TangentialElement::multiplication(g.ctx.mode, g.j_boundary, g.ctx.n, g.ctx.mu) * c;
}

}  // namespace

OperatorSeries shift_operator(const GeometryJets& g, const RatFunc& lam) {
  const Rational& n = g.n();
  return g.lap_bar.r_left(Rational(1)) - d(g) * (RatFunc(2) * lam - rf(n - 1)) - mult(g, g.trace) * (lam - rf(n - 1));
}

OperatorSeries shift_operator_conjugated(const GeometryJets& g, const Rational& lam) {
  const Rational& n = g.n();
  OperatorSeries e = g.lap_gplus + OperatorSeries::identity(g.ctx) * rf((lam + 1) * (n - lam - 1));
  return e.conjugate_by_power(n - lam - 1).r_left(Rational(-1));
}

OperatorSeries iterated_shift(const GeometryJets& g, const RatFunc& lam, int N) {
  OperatorSeries out = OperatorSeries::identity(g.ctx);
  for (int j = 0; j < N; ++j) out = out * shift_operator(g, lam + RatFunc(j));
  return out;
}

OperatorSeries gz_operator(const GeometryJets& g, const RatFunc& lam) {
  const Rational& n = g.n();
  OperatorSeries tr = mult(g, g.trace);
  return -d(g, 2).r_left(Rational(1)) + d(g) * (RatFunc(2) * lam - rf(n + 1)) - tr.r_left(Rational(1)) * d(g) -
         tr * (rf(n) - lam) - g.lap_h.r_left(Rational(1));
}

OperatorSeries flat_shift_P(const Context& ctx, const RatFunc& lam) {
  OperatorSeries lap = OperatorSeries::tangential(ctx, TangentialElement::lap_power(ctx.mode, 1)) + OperatorSeries::d_r(ctx, 2);
  return lap.r_left(Rational(1)) - OperatorSeries::d_r(ctx, 1) * (RatFunc(2) * lam - rf(ctx.n + 3));
}

OperatorSeries ddr_w(const GeometryJets& g) { return d(g) + mult(g, g.dlogw); }

OperatorSeries degenerate_laplacian(const GeometryJets& g, const RatFunc& omega) {
  const Rational& n = g.n();
  const ScalarSeries& jbar = require_jbar(g);
  ScalarSeries lap_r = g.lap_bar.apply(ScalarSeries::monomial(Rational(1), ScalarPoly(1)));
  RatFunc a = RatFunc(2) * omega + rf(n - 1);
  RatFunc b = omega * rf(Rational(1) / (n + 1));
  RatFunc c = omega * (omega + rf(n)) * rf(Rational(2) / (n + 1));
  return -g.lap_bar.r_left(Rational(1)) + (d(g) - mult(g, lap_r) * b) * a - mult(g, jbar).r_left(Rational(1)) * c;
}

OperatorSeries yamabe_bar(const GeometryJets& g) { return g.lap_bar - mult(g, require_jbar(g)) * rf((g.n() - 1) / 2); }

OperatorSeries gjms_bar(const GeometryJets& g, int N) {
  const Rational m = g.m();
  OperatorSeries x = OperatorSeries::identity(g.ctx);
  for (int l = 1; l <= N; ++l)
    x = x * (g.lap_gplus + OperatorSeries::identity(g.ctx) * rf((m + l - 1) * (m - l)));
  return x.conjugate_by_power(m - N).r_left(Rational(-2 * N));
}

TangentialElement gjms_boundary(const GeometryJets& g, int N) {
  using namespace letters;
  const TangentialMode mode = g.ctx.mode;
  const Rational& n = g.n();
  if (mode == TangentialMode::Einstein) {
    TangentialElement p = TangentialElement::scalar(mode, RatFunc(1));
    for (int l = 1; l <= N; ++l)
      p = p * (TangentialElement::lap_power(mode, 1) -
               TangentialElement::scalar(mode, rf(2 * g.mu() * (n / 2 + l - 1) * (n / 2 - l))));
    return p;
  }
  TangentialElement lap = TangentialElement::word(mode, Word{LAP});
  if (N == 0) return TangentialElement::scalar(mode, RatFunc(1));
  if (N == 1) return lap - mult_J(g, rf(n / 2 - 1));
  if (N == 2) {
    TangentialElement q4 = TangentialElement::word(mode, Word{MULT_J, MULT_J}, rf(n / 2)) -
                           TangentialElement::word(mode, Word{MULT_Psq}, RatFunc(2)) -
                           TangentialElement::word(mode, Word{MULT_DJ});
    return TangentialElement::word(mode, Word{LAP, LAP}) -
           (TangentialElement::word(mode, Word{MULT_J, LAP}) + TangentialElement::word(mode, Word{GJD})) * rf(n - 2) -
           TangentialElement::word(mode, Word{DPD}, RatFunc(4)) + q4 * rf(n / 2 - 2);
  }
  throw std::invalid_argument("generic GJMS operators are only available up to order 4");
}

BoundaryOperator delta_explicit(const GeometryJets& g, int N) {
  const Rational& n = g.n();
  const Context& c = g.ctx;
  RatFunc lam = RatFunc::lambda();
  RatFunc inv = RatFunc(1) / RatFunc::affine(Rational(-4), 2 * (n - 2));  // 1/(2(n-2-2 lam))
  TangentialElement yam = TangentialElement::lap_power(c.mode, 1) + mult_J(g, lam - rf(n - 2));
  switch (N) {
    case 0: return BoundaryOperator::derivative(c, 0);
    case 1: return BoundaryOperator::derivative(c, 1);
    case 2: return BoundaryOperator::derivative(c, 2, rf(Rational(1, 2))) + (yam * inv) * BoundaryOperator::derivative(c, 0);
    case 3: return BoundaryOperator::derivative(c, 3, rf(Rational(1, 6))) + (yam * inv) * BoundaryOperator::derivative(c, 1);
    default: throw std::invalid_argument("explicit delta operators are only tabulated up to N = 3");
  }
}

BoundaryOperator restricted_shift(const GeometryJets& g, const RatFunc& lam, int N) {
  // Compose from the right. Exponents never drop below weights, so once the
  // factors still to come can lower the weight by at most `room`, terms of
  // weight above room cannot reach r^0 and are cut.
  std::vector<OperatorSeries> f;
  for (int j = 0; j < N; ++j) f.push_back(shift_operator(g, lam + rf(Rational(j))));
  std::vector<Rational> room(N + 1, Rational(0));
  for (int j = 0; j < N; ++j) {
    Order w = min(f[j].min_weight(), f[j].order());  // unknown terms count too
    room[j + 1] = room[j] - (w.is_infinite() ? Rational(0) : min(w, Order(0)).value());
  }
  OperatorSeries acc = OperatorSeries::identity(g.ctx);
  for (int j = N - 1; j >= 0; --j) acc = (f[j] * acc).truncated(Order(room[j] + Rational(1, 2)));
  return acc.restrict_boundary();
}

BoundaryOperator residue_family(const GeometryJets& g, int N) {
  const Rational& n = g.n();
  RatFunc lam = RatFunc::lambda();
  if (N == 0) return BoundaryOperator::derivative(g.ctx, 0);
  int M = N / 2;
  if (N % 2 == 0) {
    BoundaryOperator s = restricted_shift(g, lam + rf(n - 2 * M), N);
    Poly den = pochhammer(Poly::affine(Rational(1), n / 2 - 2 * M + Rational(1, 2)), M);
    return s.divide_exact(den) * rf(Rational(1) / pochhammer(Rational(-2 * M), M));
  }
  BoundaryOperator s = restricted_shift(g, lam + rf(n - 2 * M - 1), N);
  Poly den = pochhammer(Poly::affine(Rational(1), n / 2 - 2 * M - Rational(1, 2)), M + 1);
  return s.divide_exact(den) * rf(Rational(1) / (2 * pochhammer(Rational(-2 * M - 1), M + 1)));
}

ScalarPoly q_closed(const GeometryJets& g, int N) {
  ScalarPoly J = ScalarPoly::atom(Atom::J), Psq = ScalarPoly::atom(Atom::Psq), DJ = ScalarPoly::atom(Atom::DJ);
  ScalarPoly q;
  if (N == 1) q = J;
  else if (N == 2) q = J * J * (g.n() / 2) - Psq * Rational(2) - DJ;
  else throw std::invalid_argument("closed Q-curvature formulas are only tabulated up to N = 2");
  if (g.ctx.mode == TangentialMode::Einstein) return ScalarPoly(q.einstein_value(g.n(), g.mu()));
  return q;
}

Rational q_holographic_constant(int N) {
  Rational r = factorial(N - 1) / factorial(2 * N - 1);
  return (N % 2 ? -1 : 1) * rational_pow(Rational(2), 2 * N - 2) * r * r;
}

ScalarPoly q_holographic(const GeometryJets& g, int N) {
  BoundaryOperator s = restricted_shift(g, RatFunc(g.n() / 2 - N), 2 * N - 1);
  return s.apply(g.dlogv) * q_holographic_constant(N);
}

TangentialElement shift_coefficient(const GeometryJets& g, int k) {
  OperatorSeries s = shift_operator(g, RatFunc::lambda());
  if (!s.order().covers(Rational(k + 1)))
    throw TruncationInsufficient("shift coefficient of r^" + std::to_string(k + 1) + " beyond the jet order");
  return s.coefficient(Rational(k + 1), 0);
}

std::vector<TangentialElement> solution_operators(const GeometryJets& g, int Nmax) {
  const Rational& n = g.n();
  const TangentialMode mode = g.ctx.mode;
  std::vector<TangentialElement> coeffs;
  for (int k = 0; k <= 2 * Nmax - 2; k += 2) coeffs.push_back(shift_coefficient(g, k));
  std::vector<TangentialElement> T{TangentialElement::scalar(mode, RatFunc(1))};
  for (int N = 1; N <= Nmax; ++N) {
    TangentialElement rhs(mode);
    for (int k = 0; k < N; ++k) {
      const TangentialElement& s = coeffs[N - k - 1];  // S^(2N-2k-2)
      rhs += s.map_coeffs([&](const RatFunc& c) { return c.substitute_affine(Rational(-1), n - 2 * k - 1); }) * T[k];
    }
    RatFunc den = RatFunc::affine(Rational(-4 * N), Rational(2 * N) * (n - 2 * N));  // -2N(2 lam - n + 2N)
    T.push_back(rhs * (RatFunc(1) / den));
  }
  return T;
}

TangentialElement residue_at(const TangentialElement& t, const Rational& point) {
  return t.map_coeffs([&](const RatFunc& c) { return RatFunc(c.residue(point)); });
}

TangentialElement gjms_from_solution_operators(const GeometryJets& g, const std::vector<TangentialElement>& T, int N) {
  const Rational& n = g.n();
  TangentialElement sum(g.ctx.mode);
  for (int k = 0; k < N; ++k) {
    TangentialElement s = shift_coefficient(g, 2 * N - 2 * k - 2).evaluated(n / 2 + N - 2 * k - 1);
    sum += s * T.at(k).evaluated(n / 2 - N);
  }
  Rational f = factorial(N - 1);
  return sum * rf(rational_pow(Rational(2), 2 * N - 2) * f * f);
}

OperatorSeries building_block(const GeometryJets& g, int N) {
  if (N == 1) return gjms_bar(g, 1);
  OperatorSeries p2 = gjms_bar(g, 1), p4 = gjms_bar(g, 2);
  if (N == 2) return p4 - p2 * p2;
  if (N == 3) {
    OperatorSeries p6 = gjms_bar(g, 3);
    return p6 - p2 * p4 * RatFunc(2) - p4 * p2 * RatFunc(2) + p2 * p2 * p2 * RatFunc(3);
  }
  if (N == 4) {
    // Coefficients fitted exactly on the round 3-sphere (unique solution); the
    // closed-form comparison at other n is the actual test.
    OperatorSeries p6 = gjms_bar(g, 3), p8 = gjms_bar(g, 4);
    OperatorSeries p22 = p2 * p2;
    return p8 - (p2 * p6 + p6 * p2) * RatFunc(3) - p4 * p4 * RatFunc(9) + p22 * p4 * RatFunc(12) +
           p2 * p4 * p2 * RatFunc(8) + p4 * p22 * RatFunc(12) - p22 * p22 * RatFunc(18);
  }
  throw std::invalid_argument("building blocks from GJMS products are only tabulated up to N = 4");
}

OperatorSeries sphere_building_block(const GeometryJets& g, int N) {
  if (g.backend != Backend::Einstein || g.mu() != Rational(1, 2)) throw std::invalid_argument("needs the round sphere");
  if (N < 2) throw std::invalid_argument("closed form holds for N >= 2");
  const Rational& n = g.n();
  ScalarSeries f = ScalarSeries::binomial_r2(Rational(-1, 4), Rational(-N - 1), Rational(g.truncation));
  TangentialElement p2 = TangentialElement::lap_power(g.ctx.mode, 1) - TangentialElement::scalar(g.ctx.mode, rf((n / 2 - 1) * (n / 2)));
  return mult(g, f) * OperatorSeries::tangential(g.ctx, p2) * rf(factorial(N - 1) * factorial(N));
}

OperatorSeries r_ad(const GeometryJets& g, const OperatorSeries& x) {
  OperatorSeries dw = ddr_w(g);
  return (dw * x - x * dw).r_left(Rational(-1));
}

std::vector<OperatorSeries> holographic_series_blocks(const GeometryJets& g, int jmax) {
  std::vector<OperatorSeries> out{gjms_bar(g, 1)};
  for (int j = 1; j <= jmax; ++j) {
    Rational f = factorial(j);
    out.push_back(sphere_building_block(g, j + 1) * rf(Rational(1) / (f * f)));
  }
  return out;
}

std::vector<OperatorSeries> holographic_series_exp(const GeometryJets& g, int jmax) {
  std::vector<OperatorSeries> out{gjms_bar(g, 1)};
  OperatorSeries cur = out[0];
  for (int j = 1; j <= jmax; ++j) {
    cur = r_ad(g, cur);
    out.push_back(cur * rf(rational_pow(Rational(2), j) / factorial(j)));
  }
  return out;
}

}  // namespace shiftop
