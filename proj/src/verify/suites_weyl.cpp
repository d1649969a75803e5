#include <map>
#include <random>

#include "shiftop/conformal.hpp"
#include "suites_common.hpp"

namespace shiftop::verify {
namespace {

using namespace letters;
using Q = Rational;

const Context kFree{Q(5), TangentialMode::Free, Q(0)};

// d_r^b o r^a by repeated use of d_r o r^c d_r^j = r^c d_r^(j+1) + c r^(c-1) d_r^j.
OperatorSeries heisenberg_oracle(const Q& a, int b) {
  std::map<std::pair<Q, int>, Q> cur{{{a, 0}, Q(1)}};
  for (int step = 0; step < b; ++step) {
    std::map<std::pair<Q, int>, Q> next;
    for (const auto& [k, v] : cur) {
      next[{k.first, k.second + 1}] += v;
      if (k.first != 0) next[{k.first - 1, k.second}] += k.first * v;
    }
    cur = std::move(next);
  }
  OperatorSeries out(kFree);
  for (const auto& [k, v] : cur) out.add(k.first, k.second, Word(), R(v));
  return out;
}

OperatorSeries random_series(std::mt19937_64& rng, const Order& order) {
  static const Q exps[] = {Q(-1), Q(0), Q(1, 2), Q(1), Q(2), Q(3)};
  static const Letter alphabet[] = {LAP, MULT_J, DPD, GJD};
  auto pick = [&](int k) { return int(rng() % unsigned(k)); };
  OperatorSeries s(kFree, order);
  int terms = 1 + pick(6);
  for (int i = 0; i < terms; ++i) {
    Word w;
    for (int l = pick(3); l > 0; --l) w.push_back(alphabet[pick(4)]);
    int num = pick(7) - 3;
    if (num == 0) num = 1;
    RatFunc c = R(ratio(num, 1 + pick(3)));
    int shape = pick(3);
    if (shape == 1) c = c * L();
    if (shape == 2) c = c * (L() + R(Q(1, 2)));
    int deriv = pick(3);
    Q e = exps[pick(6)];
    if (!order.covers(e - deriv)) continue;
    s.add(e, deriv, w, c);
  }
  return s;
}

OperatorSeries power(const OperatorSeries& x, int k) {
  OperatorSeries out = OperatorSeries::identity(x.context());
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

void add_algebra(Builder& b) {
  for (int deg = 0; deg <= 6; ++deg)
    b.add("weyl.heisenberg", {{"b", std::to_string(deg)}}, [deg] {
      std::vector<std::pair<std::string, std::function<Outcome()>>> parts;
      for (const Q& a : {Q(-2), Q(-1, 2), Q(1), Q(3), Q(7, 2)})
        parts.emplace_back("a=" + to_string(a), [a, deg] {
          return compare(OperatorSeries::d_r(kFree, deg) * OperatorSeries::r_power(kFree, a), heisenberg_oracle(a, deg));
        });
      return all_of(parts);
    });

  b.add("weyl.normal-order-examples", {}, [] {
    const Context& c = kFree;
    auto r = [&](const Q& a) { return OperatorSeries::r_power(c, a); };
    auto d = [&](int k) { return OperatorSeries::d_r(c, k); };
    Context flat{Q(5), TangentialMode::Einstein, Q(0)};
    return all_of({
        {"d.r", [&] { return compare(d(1) * r(1), r(1) * d(1) + OperatorSeries::identity(c)); }},
        {"d^2.r", [&] { return compare(d(2) * r(1), r(1) * d(2) + d(1) * R(2)); }},
        {"conj d", [&] { return compare(d(1).conjugate_by_power(Q(3, 2)), d(1) + r(-1) * R(Q(3, 2))); }},
        {"restrict r d^2", [&] { return Outcome::from((r(1) * d(2)).restrict_boundary().is_zero(), "nonzero"); }},
        {"lambda-diff",
         [&] { return compare((d(1) * RatFunc::affine(Q(2), Q(-4))).lambda_diff(), d(1) * R(2)); }},
        {"adjoint d flat", [&] {
           OperatorSeries df = OperatorSeries::d_r(flat, 1);
           return compare(adjoint(df, ScalarSeries::constant(ScalarPoly(1)), Q(8)), -df);
         }},
    });
  });

  for (int trial = 0; trial < 4; ++trial)
    b.add("weyl.associativity", {{"trial", std::to_string(trial)}, {"seed", std::to_string(b.cfg.seed)}},
          [trial, seed = b.cfg.seed] {
            std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(trial), 7u};
            std::mt19937_64 rng(seq);
            OperatorSeries x = random_series(rng, Order(Q(4)));
            OperatorSeries y = random_series(rng, Order::infinite());
            OperatorSeries z = random_series(rng, Order(Q(5)));
            Outcome o = compare((x * y) * z, x * (y * z), Order::infinite(), false, Order(Q(-6)));
            o.details.emplace_back("terms", std::to_string(x.terms().size()) + "," + std::to_string(y.terms().size()) +
                                                "," + std::to_string(z.terms().size()));
            return o;
          });

  b.add("weyl.adjoint-gate", {}, [] {
    try {
      adjoint(TangentialElement::word(TangentialMode::Free, Word{GJD}));
    } catch (const AdjointRuleUnavailable&) {
      return Outcome::pass("0", {{"raised", "AdjointRuleUnavailable"}});
    }
    return Outcome::fail("adjoint of GJD returned without a supplied rule");
  });
}

void add_jets(Builder& b) {
  const int K = b.cfg.order;
  auto ws = b.ws;
  for (const Geo& geo : all_grid(b.cfg)) {
    b.add("weyl.jets-laplacian", geo.params(), [=] {
      JetsPtr g = geo.jets(*ws, K);
      const Context& c = g->ctx;
      OperatorSeries rdr = OperatorSeries::r_power(c, Q(1)) * OperatorSeries::d_r(c, 1) * R(g->n() - 1);
      return compare(g->lap_bar, (g->lap_gplus + rdr).r_left(Q(-2)));
    });
    b.add("weyl.jets-volume", geo.params(), [=] {
      JetsPtr g = geo.jets(*ws, K);
      auto agree = [](const ScalarSeries& x, const ScalarSeries& y) {
        return Outcome::from(x.agrees_with(y), (x - y).str());
      };
      ScalarPoly v2 = geo.generic() ? ScalarPoly::atom(Atom::J) * Q(-1, 2) : ScalarPoly(-g->n() * g->mu() / 2);
      return all_of({
          {"w^2=v", [&] { return agree(g->w * g->w, g->v); }},
          {"dlogv*v=v'", [&] { return agree(g->dlogv * g->v, g->v.derivative()); }},
          {"dlogw=dlogv/2", [&] { return agree(g->dlogw * Q(2), g->dlogv); }},
          {"v2", [&] { return compare(g->v.coeff(Q(2)), v2); }},
      });
    });
    if (!geo.generic())
      b.add("weyl.jets-jbar", geo.params(), [=] {
        JetsPtr g = geo.jets(*ws, K);
        if (!g->j_bar) return Outcome::fail("J(gbar) missing on an Einstein backend");
        ScalarSeries s1 = shift_operator(*g, R((g->n() - 1) / 2)).apply(ScalarSeries::constant(ScalarPoly(1)));
        ScalarSeries rhs = *g->j_bar * (-(g->n() - 1) / 2);
        ScalarSeries lhs = s1.shifted(Q(-1));
        return Outcome::from(lhs.agrees_with(rhs), (lhs - rhs).str());
      });
  }
  for (const Geo& geo : einstein_grid(b.cfg, false))
    b.add("weyl.jets-generic-einstein", geo.params(), [=] {
      JetsPtr g = geo.jets(*ws, K);
      GeometryJets red = reduce_to_einstein(*ws->generic(geo.n), geo.mu);
      return all_of({
          {"lap_bar", [&] { return compare(red.lap_bar, g->lap_bar, Order::infinite(), false, Order(Q(4))); }},
          {"lap_gplus", [&] { return compare(red.lap_gplus, g->lap_gplus, Order::infinite(), false, Order(Q(4))); }},
          {"v", [&] { return Outcome::from(red.v.agrees_with(g->v, Order(Q(5))), (red.v - g->v).str()); }},
          {"dlogv", [&] { return Outcome::from(red.dlogv.agrees_with(g->dlogv, Order(Q(4))), (red.dlogv - g->dlogv).str()); }},
      });
    });
}

void add_shift_identities(Builder& b) {
  const int K = b.cfg.order;
  const int nmax = b.cfg.nmax;
  auto ws = b.ws;

  for (const Rational& n : b.cfg.ns)
    b.add("weyl.flat-shift", {{"n", to_string(n)}}, [=] {
      JetsPtr g = ws->flat(n, K);
      OperatorSeries P = flat_shift_P(g->ctx, L());
      return all_of({
          {"P=S(lam-2)", [&] { return compare(P, shift_operator(*g, L() - R(2))); }},
          {"P=-D(lam-1)", [&] { return compare(P, -gz_operator(*g, L() - R(1))); }},
          {"P=-ID(lam-n-1)", [&] { return compare(P, -degenerate_laplacian(*g, L() - R(n + 1))); }},
      });
    });

  for (const Geo& geo : all_grid(b.cfg)) {
    Params p = geo.params();
    b.add("weyl.shift-examples", p, [=] {
      JetsPtr g = geo.jets(*ws, K);
      std::vector<std::pair<std::string, std::function<Outcome()>>> parts;
      parts.emplace_back("S(n-1)(1)=0", [&] {
        ScalarSeries s = shift_operator(*g, R(g->n() - 1)).apply(ScalarSeries::constant(ScalarPoly(1)));
        return Outcome::from(s.is_zero(), s.str());
      });
      if (!geo.generic())
        parts.emplace_back("S((n-1)/2)=r P2bar", [&] {
          return compare(shift_operator(*g, R((g->n() - 1) / 2)), yamabe_bar(*g).r_left(Q(1)));
        });
      return all_of(parts);
    });

    b.add("weyl.sl2", p, [=] {
      JetsPtr g = geo.jets(*ws, K);
      const Context& c = g->ctx;
      OperatorSeries S = shift_operator(*g, L());
      std::vector<std::pair<std::string, std::function<Outcome()>>> parts;
      for (const Q& a : {Q(1), Q(2), Q(3), Q(1, 2)})
        parts.emplace_back("a=" + to_string(a), [&, a] {
          OperatorSeries lhs = S * OperatorSeries::r_power(c, a);
          OperatorSeries rhs = shift_operator(*g, L() - R(a)).r_left(a) -
                               OperatorSeries::r_power(c, a - 1, (RatFunc(2) * L() - R(g->n() - 2 + a)) * R(a));
          return compare(lhs, rhs);
        });
      return all_of(parts);
    });

    for (int N = 1; N <= nmax; ++N) {
      b.add("weyl.comm-shift", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        OperatorSeries SN = ws->shift_N(g, N);
        OperatorSeries lhs = SN.r_right(Q(1));
        OperatorSeries rhs = SN.substitute(Q(1), Q(-1)).r_left(Q(1)) -
                             ws->shift_N(g, N - 1) * ((RatFunc(2) * L() - R(g->n() - N)) * R(N));
        return compare(lhs, rhs);
      });
      b.add("weyl.leading-lambda", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        OperatorSeries lead = ws->shift_N(g, N).lambda_diff(N) * R(Q(1) / factorial(N));
        return compare(lead, power(ddr_w(*g), N) * R(rational_pow(Q(-2), N)));
      });
    }

    b.add("weyl.binomial-commutation", p, [=] {
      JetsPtr g = geo.jets(*ws, K);
      const Q n = g->n();
      std::vector<std::pair<std::string, std::function<Outcome()>>> parts;
      for (int k = 1; k <= 3; ++k)
        for (int j = 1; j <= 3; ++j)
          parts.emplace_back("k=" + std::to_string(k) + ",j=" + std::to_string(j), [&, k, j] {
            OperatorSeries lhs = ws->shift_N(g, k).r_right(Q(j));
            OperatorSeries rhs(g->ctx);
            for (int l = 0; l <= k; ++l) {
              RatFunc coef = R(binomial(k, l) * pochhammer(Q(-j), l)) *
                             pochhammer(RatFunc(2) * L() - R(n + j - k - 1), l);
              rhs = rhs + ws->shift_N(g, k - l).substitute(Q(1), Q(l - j)).r_left(Q(j - l)) * coef;
            }
            return compare(lhs, rhs);
          });
      return all_of(parts);
    });

    b.add("weyl.conjugation-form", p, [=] {
      JetsPtr g = geo.jets(*ws, K);
      std::vector<std::pair<std::string, std::function<Outcome()>>> parts;
      for (const Q& lam : {Q(0), Q(1, 3), Q(5, 2)})
        parts.emplace_back("lam=" + to_string(lam), [&, lam] {
          return compare(shift_operator(*g, R(lam)), shift_operator_conjugated(*g, lam));
        });
      parts.emplace_back("S=-D(lam+1)", [&] { return compare(shift_operator(*g, L()), -gz_operator(*g, L() + R(1))); });
      return all_of(parts);
    });

    b.add("weyl.adjoint", p, [=] {
      JetsPtr g = geo.jets(*ws, K);
      const Q n = g->n();
      OperatorSeries S = shift_operator(*g, L());
      if (geo.generic()) {
        // Caller-supplied rule: <dJ, d.>^* = -<dJ, d.> - Delta J.
        AdjointRules rules;
        rules[GJD] = TangentialElement::word(TangentialMode::Free, Word{GJD}, R(-1)) -
                     TangentialElement::word(TangentialMode::Free, Word{MULT_DJ});
        Q cap(8);
        OperatorSeries adj = adjoint(S, g->v, cap, rules);
        return compare(adj, shift_operator(*g, R(n - 2) - L()), Order::infinite(), true);
      }
      Q cap(g->truncation);
      OperatorSeries adj = adjoint(S, g->v, cap);
      return all_of({
          {"S^*=S(n-2-lam)", [&] { return compare(adj, shift_operator(*g, R(n - 2) - L())); }},
          {"involution", [&] { return compare(adjoint(adj, g->v, cap), S); }},
      });
    });

    if (!geo.generic())
      b.add("weyl.degenerate-laplacian", p, [=] {
        JetsPtr g = geo.jets(*ws, K);
        const Q n = g->n();
        return all_of({
            {"S=-ID(lam-n+1)",
             [&] { return compare(shift_operator(*g, L()), -degenerate_laplacian(*g, L() - R(n - 1))); }},
            {"omega=0", [&] {
               return compare(degenerate_laplacian(*g, R(0)).restrict_boundary(),
                              BoundaryOperator::derivative(g->ctx, 1, R(n - 1)));
             }},
        });
      });
  }

  for (const Geo& geo : einstein_grid(b.cfg, false))
    b.add("weyl.order-stability", with(geo.params(), "N", nmax), [=] {
      return stable(ws->shift_N(geo.jets(*ws, K), nmax), ws->shift_N(geo.jets(*ws, K + 2), nmax));
    });
}

}  // namespace

void add_weyl(Builder& b) {
  add_algebra(b);
  add_jets(b);
  add_shift_identities(b);
}

void add_delta(Builder& b) {
  auto ws = b.ws;
  // Random order-4 Laplacian term in a throwaway letter, plus v data above the
  // built-in order. Nothing the delta checks certify may depend on it.
  Alphabet::declare("H4PROBE", AdjointKind::Unavailable, false);
  std::seed_seq seq{std::uint32_t(b.cfg.seed), std::uint32_t(b.cfg.seed >> 32), 4u};
  std::mt19937_64 rng(seq);
  auto rnd = [&] {
    long p = long(rng() % 9) - 4;
    return ratio(p, long(1 + rng() % 5));
  };
  JetExtension probe;
  Q c1 = rnd() + 5, c2 = rnd(), c3 = rnd() + 7, c4 = rnd();
  int d2 = int(rng() % 3);
  probe.lap_bar[4].push_back(JetExtensionTerm{Word{*Alphabet::find("H4PROBE")}, 0, c1});
  probe.lap_bar[4].push_back(JetExtensionTerm{Word{MULT_Psq}, d2, c2});
  probe.v[5] = ScalarPoly();
  probe.v[6] = ScalarPoly::atom(Atom::J, 3) * c3 + ScalarPoly::atom(Atom::DJ) * c4;
  std::string tag = "h4probe/" + std::to_string(b.cfg.seed);

  for (const Rational& n : b.cfg.ns)
    for (int N = 1; N <= 3; ++N)
      b.add("delta.restriction", {{"geom", "generic"}, {"n", to_string(n)}, {"N", std::to_string(N)}}, [=] {
        JetsPtr g = ws->generic(n);
        BoundaryOperator lhs = ws->shift_N(g, N).restrict_boundary();
        RatFunc f = pochhammer(R(-N), N) * pochhammer(RatFunc(2) * L() - R(n - 1), N);
        Outcome main = compare(lhs, delta_explicit(*g, N) * f);
        if (main.status != Status::Pass) return main;
        // Jet independence: same restriction with the random order-4 data.
        JetsPtr h = ws->generic_with(n, probe, tag);
        BoundaryOperator other = ws->shift_N(h, N).restrict_boundary();
        if (other != lhs) return Outcome::fail("restriction changed under order-4 jet data: " + (other - lhs).str());
        main.details.emplace_back("jet_independence", "order-4 probe letter H4PROBE, identical");
        return main;
      });
}

}  // namespace shiftop::verify
