#include "shiftop/geometry.hpp"

#include <sstream>

namespace shiftop {

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Flat: return "flat";
    case Backend::Einstein: return "einstein";
    case Backend::Generic: return "generic";
  }
  return "?";
}

std::string GeometryJets::label() const {
  std::ostringstream os;
  os << backend_name(backend) << "(n=" << ctx.n.get_str();
  if (backend == Backend::Einstein) os << ",mu=" << ctx.mu.get_str();
  os << ")";
  return os.str();
}

namespace {

void finish(GeometryJets& j) {
  const Context& c = j.ctx;
  OperatorSeries d1 = OperatorSeries::d_r(c, 1);
  j.lap_bar = j.lap_h + OperatorSeries::d_r(c, 2) + OperatorSeries::multiplication(c, j.trace) * d1;
  j.lap_gplus = j.lap_bar.r_left(Rational(2)) - OperatorSeries::r_power(c, Rational(1), RatFunc(c.n - 1)) * d1;
}

}  // namespace

GeometryJets flat_jets(const Rational& n, int truncation) {
  GeometryJets j = einstein_jets(n, Rational(0), truncation);
  j.backend = Backend::Flat;
  return j;
}

GeometryJets einstein_jets(const Rational& n, const Rational& mu, int truncation) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (truncation < 4) throw std::invalid_argument("truncation below 4 is too short for any shift identity");
  GeometryJets j;
  j.backend = Backend::Einstein;
  j.ctx = Context{n, TangentialMode::Einstein, mu};
  j.truncation = truncation;
  const Rational K(truncation);
  const Rational c = -mu / 2;  // phi = 1 + c r^2 and h_r = phi^2 h
  ScalarSeries phi_inv = ScalarSeries::binomial_r2(c, Rational(-1), K);
  ScalarSeries dphi = ScalarSeries::monomial(Rational(1), ScalarPoly(2 * c), Order(K));
  ScalarSeries ddphi = ScalarSeries::constant(ScalarPoly(2 * c), Order(K));
  ScalarSeries q = dphi * phi_inv;  // phi'/phi

  j.lap_h = OperatorSeries::multiplication(j.ctx, ScalarSeries::binomial_r2(c, Rational(-2), K)) *
            OperatorSeries::tangential(j.ctx, TangentialElement::lap_power(TangentialMode::Einstein, 1));
  j.trace = q * n;
  j.v = ScalarSeries::binomial_r2(c, n, K);
  j.w = ScalarSeries::binomial_r2(c, n / 2, K);
  j.dlogv = j.v.log_derivative(K);
  j.dlogw = j.w.log_derivative(K);
  j.j_boundary = ScalarPoly(n * mu);
  // Scalar curvature of dr^2 + phi^2 h with Ric(h) = 2 mu (n-1) h.
  Rational tau_h = 2 * mu * n * (n - 1);
  ScalarSeries tau = phi_inv * phi_inv * tau_h - ddphi * phi_inv * (2 * n) - q * q * (n * (n - 1));
  j.j_bar = (tau * (Rational(1) / (2 * n))).truncated(Order(K));
  finish(j);
  return j;
}

GeometryJets generic_jets(const Rational& n, const JetExtension& ext) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  using namespace letters;
  GeometryJets j;
  j.backend = Backend::Generic;
  j.ctx = Context{n, TangentialMode::Free, Rational(0)};
  const Context& c = j.ctx;
  ScalarPoly J = ScalarPoly::atom(Atom::J), Psq = ScalarPoly::atom(Atom::Psq);
  j.j_boundary = J;

  // v = 1 - J r^2 / 2 + (J^2 - |P|^2) r^4 / 8 + O(r^5)
  int v_order = 5;
  std::map<int, ScalarPoly> vc{{0, ScalarPoly(1)}, {2, J * Rational(-1, 2)}, {4, (J * J - Psq) * Rational(1, 8)}};
  for (const auto& [k, p] : ext.v) {
    if (k != v_order) throw std::invalid_argument("v extension must continue at order " + std::to_string(v_order));
    vc[k] = p;
    ++v_order;
  }
  j.v = ScalarSeries(Order(v_order));
  for (const auto& [k, p] : vc) j.v.add(Rational(k), p);
  const Rational vcap(v_order);
  j.w = j.v.sqrt(vcap);
  j.dlogv = j.v.log_derivative(vcap);
  j.dlogw = j.w.log_derivative(vcap);
  // v is even in r, so d_r log v is odd and its r^(v_order-1) coefficient vanishes
  // whenever v_order - 1 is even.
  Order trace_order = j.dlogv.order();
  if (v_order % 2 == 1) trace_order = Order(Rational(v_order));
  j.trace = ScalarSeries(trace_order);
  for (const auto& [e, p] : j.dlogv.terms()) j.trace.add(e, p);

  j.lap_h = OperatorSeries(c, Order(4));
  j.lap_h.add(Rational(0), 0, Word{LAP}, RatFunc(1));
  j.lap_h.add(Rational(2), 0, Word{DPD}, RatFunc(-1));
  j.lap_h.add(Rational(2), 0, Word{GJD}, RatFunc(Rational(-1, 2)));
  finish(j);

  if (!ext.lap_bar.empty()) {
    int next = 4;
    for (const auto& [k, terms] : ext.lap_bar) {
      if (k != next) throw std::invalid_argument("Laplacian extension must continue at order " + std::to_string(next));
      ++next;
    }
    // New r^k coefficients are complete, so the weight bound moves up with them.
    Order o{Rational(next)};
    if (v_order < next + 1) o = min(o, Order(Rational(v_order - 1)));
    OperatorSeries lb(c, o);
    for (const auto& [k, t] : j.lap_bar.terms()) lb.add(k, t);
    for (const auto& [k, terms] : ext.lap_bar)
      for (const auto& t : terms) {
        if (t.deriv > 2) throw std::invalid_argument("Laplacian extension with d_r degree above 2");
        lb.add(Rational(k + t.deriv), t.deriv, t.word, RatFunc(t.coeff));
      }
    j.lap_bar = lb;
    OperatorSeries d1 = OperatorSeries::d_r(c, 1);
    j.lap_h = (lb - OperatorSeries::d_r(c, 2) - OperatorSeries::multiplication(c, j.trace) * d1).truncated(o);
    j.lap_gplus = j.lap_bar.r_left(Rational(2)) - OperatorSeries::r_power(c, Rational(1), RatFunc(c.n - 1)) * d1;
  }
  return j;
}

GeometryJets reduce_to_einstein(const GeometryJets& g, const Rational& mu) {
  if (g.backend != Backend::Generic) throw std::invalid_argument("reduction needs generic jets");
  GeometryJets j;
  j.backend = Backend::Einstein;
  j.ctx = Context{g.ctx.n, TangentialMode::Einstein, mu};
  auto red = [&](const ScalarSeries& s) {
    ScalarSeries out(s.order());
    for (const auto& [e, p] : s.terms()) out.add(e, ScalarPoly(p.einstein_value(g.ctx.n, mu)));
    return out;
  };
  j.lap_h = g.lap_h.reduce_einstein(mu);
  j.lap_bar = g.lap_bar.reduce_einstein(mu);
  j.lap_gplus = g.lap_gplus.reduce_einstein(mu);
  j.trace = red(g.trace);
  j.v = red(g.v);
  j.w = red(g.w);
  j.dlogv = red(g.dlogv);
  j.dlogw = red(g.dlogw);
  j.j_boundary = ScalarPoly(g.j_boundary.einstein_value(g.ctx.n, mu));
  return j;
}

}  // namespace shiftop
