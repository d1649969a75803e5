#include <set>

#include "shiftop/conformal.hpp"
#include "suites_common.hpp"

namespace shiftop::verify {
namespace {

using namespace letters;
using Q = Rational;
using Parts = std::vector<std::pair<std::string, std::function<Outcome()>>>;

Q df2(int N) {
  Q d = double_factorial(2 * N - 1);
  return d * d;
}

OperatorSeries power(const OperatorSeries& x, int k) {
  OperatorSeries out = OperatorSeries::identity(x.context());
  for (int i = 0; i < k; ++i) out = out * x;
  return out;
}

std::vector<Geo> sphere_grid(const SuiteConfig& cfg) {
  std::vector<Geo> out;
  for (const auto& n : cfg.ns) out.push_back(Geo{Backend::Einstein, n, Q(1, 2)});
  return out;
}

}  // namespace

void add_factorization(Builder& b) {
  const int K = b.cfg.order;
  const int nmax = b.cfg.nmax;
  auto ws = b.ws;

  auto ladder = [ws, K](const Geo& geo, int N) {
    return [=] {
      JetsPtr g = geo.jets(*ws, K);
      const Q n = g->n();
      const bool lb = geo.generic();
      const Context& c = g->ctx;
      auto D = [&](int k) { return ws->residue(g, k); };
      OperatorSeries Sn1 = shift_operator(*g, L() + R(n - 1));
      OperatorSeries Mr = OperatorSeries::r_power(c, Q(1));
      return all_of({
          {"a", [&] { return compare(D(2 * N), D(2 * N - 1).substitute(Q(1), Q(-1)) * Sn1, lb); }},
          {"b", [&] {
             return compare(D(2 * N + 1) * ((RatFunc(2) * L() + R(n - 2 * N - 1)) * R(-(2 * N + 1))),
                            D(2 * N).substitute(Q(1), Q(-1)) * Sn1, lb);
           }},
          {"c", [&] { return compare(D(2 * N), D(2 * N + 1).substitute(Q(1), Q(1)) * Mr, lb); }},
          {"d", [&] {
             return compare(D(2 * N - 1) * ((RatFunc(2) * L() + R(n - 2 * N + 2)) * R(-2 * N)),
                            D(2 * N).substitute(Q(1), Q(1)) * Mr, lb);
           }},
      });
    };
  };
  auto leading = [ws, K](const Geo& geo, int N) {
    return [=] {
      JetsPtr g = geo.jets(*ws, K);
      BoundaryOperator D2N = ws->residue(g, 2 * N);
      if (D2N.lambda_degree() != N)
        return Outcome::fail("lambda degree " + std::to_string(D2N.lambda_degree()) + ", expected " + std::to_string(N));
      OperatorSeries W = OperatorSeries::multiplication(g->ctx, g->w);
      BoundaryOperator target = (OperatorSeries::d_r(g->ctx, 2 * N) * W).restrict_boundary() *
                                R((N % 2 ? -1 : 1) * rational_pow(Q(2), 2 * N) * factorial(N) / factorial(2 * N));
      return compare(D2N.lambda_coefficient(N), target, geo.generic());
    };
  };

  for (const Geo& geo : einstein_grid(b.cfg)) {
    Params p = geo.params();
    for (int N = 1; N <= std::min(3, nmax); ++N) {
      b.add("factorization.ladder", with(p, "N", N), ladder(geo, N));
      b.add("factorization.leading", with(p, "N", N), leading(geo, N));
    }
    for (int N = 1; N <= nmax; ++N)
      b.add("factorization.gjms-split", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        if (even_excluded(g->n(), N)) return Outcome::skip(even_reason(g->n(), N));
        Parts parts;
        for (int k = 0; k < N; ++k)
          parts.emplace_back("k=" + std::to_string(k), [&, k] {
            Q lam = g->m() - k - 1;
            OperatorSeries lhs = ws->shift_N(g, N).evaluated(lam);
            OperatorSeries rhs = iterated_shift(*g, R(lam), k) * ws->gjms_bar(g, N - k).r_left(Q(N - k));
            return compare(lhs, rhs);
          });
        return all_of(parts);
      });
    for (int N = 2; N <= nmax + 2; ++N) {
      b.add("factorization.residue-factor", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        const Q n = g->n();
        Parts parts;
        for (int k = 1; 2 * k <= N; ++k)
          parts.emplace_back("k=" + std::to_string(k), [&, k] {
            Q lam0 = -n / 2 + N - k;
            return compare(ws->residue(g, N).evaluated(lam0),
                           gjms_boundary(*g, k) * ws->residue(g, N - 2 * k).evaluated(lam0));
          });
        return all_of(parts);
      });
      b.add("factorization.second-np", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        const Q n = g->n();
        Parts parts;
        for (int k = 1; 2 * k <= N; ++k)
          parts.emplace_back("k=" + std::to_string(k), [&, k] {
            Q l1 = -(n + 1) / 2 + k, l2 = -(n + 1) / 2 - k;
            return compare(ws->residue(g, N).evaluated(l1),
                           ws->residue(g, N - 2 * k).evaluated(l2) * ws->gjms_bar(g, k));
          });
        return all_of(parts);
      });
    }
  }

  for (const Geo& geo : generic_grid(b.cfg)) {
    Params p = geo.params();
    for (int N = 1; N <= std::min(2, nmax); ++N) {
      b.add("factorization.ladder", with(p, "N", N), ladder(geo, N));
      b.add("factorization.leading", with(p, "N", N), leading(geo, N));
    }
    for (int N = 2; N <= 4; ++N)
      b.add("factorization.residue-factor", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        const Q n = g->n();
        Parts parts;
        for (int k = 1; 2 * k <= N && k <= 2; ++k)
          parts.emplace_back("k=" + std::to_string(k), [&, k] {
            Q lam0 = -n / 2 + N - k;
            return compare(ws->residue(g, N).evaluated(lam0),
                           gjms_boundary(*g, k) * ws->residue(g, N - 2 * k).evaluated(lam0), true);
          });
        return all_of(parts);
      });
  }

  for (const Geo& geo : einstein_grid(b.cfg, false))
    b.add("factorization.order-stability", with(geo.params(), "N", nmax + 1), [=] {
      BoundaryOperator a = ws->residue(geo.jets(*ws, K), nmax + 1);
      BoundaryOperator c = ws->residue(geo.jets(*ws, K + 2), nmax + 1);
      return compare(a, c);
    });
}

void add_tangential(Builder& b) {
  const int K = b.cfg.order;
  const int nmax = b.cfg.nmax;
  auto ws = b.ws;
  for (const Geo& geo : einstein_grid(b.cfg)) {
    Params p = geo.params();
    for (int N = 1; N <= nmax; ++N) {
      b.add("tangential.gjms", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        if (even_excluded(g->n(), N)) return Outcome::skip(even_reason(g->n(), N));
        BoundaryOperator lhs = restricted_shift(*g, R(g->n() / 2 - N), 2 * N);
        return compare(lhs, gjms_boundary(*g, N) * BoundaryOperator::derivative(g->ctx, 0) * R(df2(N)));
      });
      b.add("tangential.interpolation", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        BoundaryOperator lhs = restricted_shift(*g, R((g->n() - 1) / 2 - N), 2 * N);
        return compare(lhs, ws->gjms_bar(g, N).restrict_boundary() * R(factorial(2 * N)));
      });
      b.add("tangential.odd-vanish", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        BoundaryOperator s = restricted_shift(*g, R((g->n() + 1) / 2 - N), 2 * N - 1);
        return Outcome::from(s.is_zero(), s.str());
      });
      b.add("tangential.odd-interpolation", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        BoundaryOperator lhs = restricted_shift(*g, R((g->n() - 3) / 2 - N), 2 * N + 1);
        BoundaryOperator rhs =
            (OperatorSeries::d_r(g->ctx, 1) * ws->gjms_bar(g, N)).restrict_boundary() * R(factorial(2 * N + 2));
        return compare(lhs, rhs);
      });
    }
  }
  for (const Geo& geo : generic_grid(b.cfg))
    for (int N = 1; N <= nmax; ++N)
      b.add("tangential.generic", with(geo.params(), "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        if (even_excluded(g->n(), N)) return Outcome::skip(even_reason(g->n(), N));
        BoundaryOperator lhs = restricted_shift(*g, R(g->n() / 2 - N), 2 * N);
        return compare(lhs, gjms_boundary(*g, N) * BoundaryOperator::derivative(g->ctx, 0) * R(df2(N)), N >= 2);
      });
  for (const Geo& geo : einstein_grid(b.cfg, false))
    b.add("tangential.order-stability", with(geo.params(), "N", nmax), [=] {
      Q lam = geo.n / 2 - nmax;
      return compare(restricted_shift(*geo.jets(*ws, K), R(lam), 2 * nmax),
                     restricted_shift(*geo.jets(*ws, K + 2), R(lam), 2 * nmax));
    });
}

void add_big_gjms(Builder& b) {
  const int K = b.cfg.order;
  const int nmax = b.cfg.nmax;
  auto ws = b.ws;
  for (const Geo& geo : einstein_grid(b.cfg)) {
    Params p = geo.params();
    for (int N = 1; N <= nmax; ++N)
      b.add("bigGJMS.cross-route", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        // Composition of definition-form shifts against the product over Lap(g+).
        return compare(iterated_shift(*g, R(g->m() - 1), N), ws->gjms_bar(g, N).r_left(Q(N)));
      });
    b.add("bigGJMS.yamabe", p, [=] {
      JetsPtr g = geo.jets(*ws, K);
      return compare(ws->gjms_bar(g, 1), yamabe_bar(*g));
    });
  }
  for (const Rational& n : b.cfg.ns)
    b.add("bigGJMS.flat", {{"geom", "flat"}, {"n", to_string(n)}}, [=] {
      JetsPtr g = ws->flat(n, K);
      Parts parts;
      for (int N = 1; N <= nmax; ++N)
        parts.emplace_back("N=" + std::to_string(N),
                           [&, N] { return compare(ws->gjms_bar(g, N), power(g->lap_bar, N)); });
      return all_of(parts);
    });
  for (const Geo& geo : einstein_grid(b.cfg, false))
    b.add("bigGJMS.order-stability", with(geo.params(), "N", nmax), [=] {
      return stable(ws->gjms_bar(geo.jets(*ws, K), nmax), ws->gjms_bar(geo.jets(*ws, K + 2), nmax));
    });
}

void add_q_holo(Builder& b) {
  const int K = b.cfg.order;
  const int nmax = b.cfg.nmax;
  auto ws = b.ws;
  std::set<Q> ns(b.cfg.ns.begin(), b.cfg.ns.end());
  ns.insert(Q(2));
  ns.insert(Q(4));
  for (const Q& n : ns)
    for (int N = 1; N <= 2; ++N) {
      if (2 * N > n) continue;
      b.add("q-holo.generic", {{"geom", "generic"}, {"n", to_string(n)}, {"N", std::to_string(N)}}, [=] {
        JetsPtr g = ws->generic(n);
        Outcome o = compare(q_holographic(*g, N), q_closed(*g, N));
        o.details.emplace_back("case", 2 * N == n ? "critical" : "subcritical");
        return o;
      });
    }
  for (const Geo& geo : einstein_grid(b.cfg)) {
    Params p = geo.params();
    for (int N = 1; N <= nmax; ++N) {
      b.add("q-holo.einstein", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        const Q n = g->n();
        if (2 * N > n && is_integer(n) && to_long(n) % 2 == 0) return Outcome::skip(even_reason(n, N));
        Q q = q_holographic(*g, N).constant_term();
        Q p1 = gjms_boundary(*g, N).apply(ScalarPoly(1), n, g->mu()).constant_term();
        Q rhs = (N % 2 ? -1 : 1) * (n / 2 - N) * q;
        Params d{{"Q", to_string(q)}, {"P(1)", to_string(p1)}};
        return Outcome::from(p1 == rhs, "P(1) = " + to_string(p1) + ", (-1)^N (n/2-N) Q = " + to_string(rhs), d);
      });
      if (2 * N <= geo.n)
        b.add("q-holo.vanish", with(p, "N", N), [=] {
          JetsPtr g = geo.jets(*ws, K);
          ScalarPoly v = ws->residue(g, 2 * N).evaluated(Q(0)).apply(ScalarSeries::constant(ScalarPoly(1)));
          return Outcome::from(v.is_zero(), v.str());
        });
    }
  }
  for (const Geo& geo : generic_grid(b.cfg))
    for (int N = 1; N <= 2 && 2 * N <= geo.n; ++N)
      b.add("q-holo.vanish", with(geo.params(), "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        ScalarPoly v = ws->residue(g, 2 * N).evaluated(Q(0)).apply(ScalarSeries::constant(ScalarPoly(1)));
        return Outcome::from(v.is_zero(), v.str());
      });
  for (const Geo& geo : einstein_grid(b.cfg, false))
    b.add("q-holo.order-stability", with(geo.params(), "N", nmax), [=] {
      ScalarPoly a = q_holographic(*geo.jets(*ws, K), nmax), c = q_holographic(*geo.jets(*ws, K + 2), nmax);
      return compare(a, c);
    });
}

namespace {

// Closed forms of T_2 and T_4 over the generic alphabet.
std::pair<TangentialElement, TangentialElement> closed_T(const Q& n) {
  TangentialMode fm = TangentialMode::Free;
  TangentialElement lap = TangentialElement::word(fm, Word{LAP}), J = TangentialElement::word(fm, Word{MULT_J});
  TangentialElement t2 = (lap - J * L()) * (RatFunc(1) / RatFunc::affine(Q(-4), 2 * n - 4));
  TangentialElement A = (lap - J * (L() + R(2))) * (lap - J * L()) * (RatFunc(1) / RatFunc::affine(Q(-4), 2 * n - 4));
  TangentialElement inner = A - TangentialElement::word(fm, Word{MULT_Psq}, L() * R(Q(1, 2))) -
                            TangentialElement::word(fm, Word{DPD}) -
                            TangentialElement::word(fm, Word{GJD}, R(Q(1, 2)));
  TangentialElement t4 = inner * (RatFunc(1) / RatFunc::affine(Q(-8), 4 * (n - 4)));
  return {t2, t4};
}

}  // namespace

void add_solution_ops(Builder& b) {
  const int K = b.cfg.order;
  const int nmax = b.cfg.nmax;
  auto ws = b.ws;
  for (const Geo& geo : generic_grid(b.cfg)) {
    b.add("solution-ops.generic-closed-form", geo.params(), [=] {
      JetsPtr g = geo.jets(*ws, K);
      auto T = ws->solution_ops(g, 2);
      auto [t2, t4] = closed_T(g->n());
      return all_of({{"T2", [&] { return compare(T[1], t2); }}, {"T4", [&] { return compare(T[2], t4); }}});
    });
    for (int j = 1; j <= std::min(2, nmax); ++j)
      b.add("solution-ops.residue", with(geo.params(), "j", j), [=] {
        JetsPtr g = geo.jets(*ws, K);
        auto T = ws->solution_ops(g, 2);
        TangentialElement res = residue_at(T[j], g->n() / 2 - j);
        TangentialElement target =
            gjms_boundary(*g, j) * R(Q(-1) / (rational_pow(Q(2), 2 * j) * factorial(j) * factorial(j - 1)));
        return compare(res.leibniz_normal(), target.leibniz_normal());
      });
  }
  for (const Geo& geo : einstein_grid(b.cfg)) {
    Params p = geo.params();
    b.add("solution-ops.einstein-closed-form", p, [=] {
      JetsPtr g = geo.jets(*ws, K);
      auto T = ws->solution_ops(g, nmax);
      auto [t2, t4] = closed_T(g->n());
      return all_of({
          {"T2", [&] { return compare(T[1], t2.reduce_einstein(g->n(), g->mu())); }},
          {"T4", [&] { return compare(T[2], t4.reduce_einstein(g->n(), g->mu())); }},
      });
    });
    for (int j = 1; j <= nmax; ++j) {
      b.add("solution-ops.residue", with(p, "j", j), [=] {
        JetsPtr g = geo.jets(*ws, K);
        auto T = ws->solution_ops(g, nmax);
        TangentialElement res = residue_at(T[j], g->n() / 2 - j);
        TangentialElement target =
            gjms_boundary(*g, j) * R(Q(-1) / (rational_pow(Q(2), 2 * j) * factorial(j) * factorial(j - 1)));
        return compare(res, target);
      });
      b.add("solution-ops.gjms-recursion", with(p, "N", j), [=] {
        JetsPtr g = geo.jets(*ws, K);
        auto T = ws->solution_ops(g, nmax);
        return compare(gjms_from_solution_operators(*g, T, j), gjms_boundary(*g, j));
      });
    }
  }
  for (const Geo& geo : einstein_grid(b.cfg, false))
    b.add("solution-ops.order-stability", with(geo.params(), "N", nmax), [=] {
      auto a = ws->solution_ops(geo.jets(*ws, K), nmax), c = ws->solution_ops(geo.jets(*ws, K + 2), nmax);
      Parts parts;
      for (size_t k = 0; k < a.size(); ++k)
        parts.emplace_back("T" + std::to_string(2 * k), [&, k] { return compare(a[k], c[k]); });
      return all_of(parts);
    });
}

// The sphere suites run four orders above the configured truncation so the
// N = 4 commutator is compared through weight K - 2.
void add_building_blocks(Builder& b) {
  const int K = b.cfg.order + 4;
  const Order need(Rational(b.cfg.order - 2));
  auto ws = b.ws;
  for (const Geo& geo : sphere_grid(b.cfg)) {
    Params p = geo.params();
    for (int N = 2; N <= 4; ++N) {
      b.add("building-blocks.sphere", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        return compare(building_block(*g, N), sphere_building_block(*g, N));
      });
      b.add("building-blocks.commutator", with(p, "N", N), [=] {
        JetsPtr g = geo.jets(*ws, K);
        OperatorSeries dw = ddr_w(*g);
        OperatorSeries prev = building_block(*g, N - 1);
        OperatorSeries lhs = building_block(*g, N).r_left(Q(1));
        return compare(lhs, (dw * prev - prev * dw) * R(2 * (N - 1)), Order::infinite(), false, need);
      });
    }
  }
  for (const Rational& n : b.cfg.ns)
    b.add("building-blocks.flat", {{"geom", "flat"}, {"n", to_string(n)}}, [=] {
      JetsPtr g = ws->flat(n, K);
      Parts parts;
      for (int N = 2; N <= 4; ++N)
        parts.emplace_back("N=" + std::to_string(N), [&, N] {
          OperatorSeries m = building_block(*g, N);
          return Outcome::from(m.is_zero(), m.serialize());
        });
      return all_of(parts);
    });
  for (const Geo& geo : sphere_grid(b.cfg))
    b.add("building-blocks.order-stability", with(geo.params(), "N", 4), [=] {
      return stable(building_block(*geo.jets(*ws, K), 4), building_block(*geo.jets(*ws, K + 2), 4));
    });
}

void add_holo_laplacian(Builder& b) {
  const int K = b.cfg.order + 4;
  const Order need(Rational(b.cfg.order - 4));
  auto ws = b.ws;
  for (const Geo& geo : sphere_grid(b.cfg)) {
    Params p = geo.params();
    b.add("holo-laplacian.routes", with(p, "eta_order", 6), [=] {
      JetsPtr g = geo.jets(*ws, K);
      auto a = holographic_series_blocks(*g, 3), c = holographic_series_exp(*g, 3);
      Parts parts;
      for (int j = 0; j <= 3; ++j)
        parts.emplace_back("eta^" + std::to_string(2 * j),
                           [&, j] { return compare(a[j], c[j], Order::infinite(), false, need); });
      return all_of(parts);
    });
    b.add("holo-laplacian.r-ad", p, [=] {
      JetsPtr g = geo.jets(*ws, K);
      return compare(r_ad(*g, building_block(*g, 1)), building_block(*g, 2) * R(Q(1, 2)));
    });
    b.add("holo-laplacian.order-stability", p, [=] {
      auto a = holographic_series_exp(*geo.jets(*ws, K), 3), c = holographic_series_exp(*geo.jets(*ws, K + 2), 3);
      Parts parts;
      for (int j = 0; j <= 3; ++j)
        parts.emplace_back("eta^" + std::to_string(2 * j), [&, j] { return stable(a[j], c[j]); });
      return all_of(parts);
    });
  }
}

void add_exploratory(Builder& b) {
  const int K = b.cfg.order;
  const int nmax = b.cfg.nmax;
  auto ws = b.ws;
  for (const Geo& geo : sphere_grid(b.cfg))
    for (int N = 2; N <= nmax; ++N)
      b.add(
          "exploratory.leading-r-coefficient", with(geo.params(), "N", N),
          [=] {
            JetsPtr g = geo.jets(*ws, K);
            const Context& c = g->ctx;
            OperatorSeries W = OperatorSeries::multiplication(c, g->w);
            OperatorSeries Winv = OperatorSeries::multiplication(c, g->w.reciprocal(Q(K)));
            OperatorSeries X = W * ws->shift_N(g, N) * Winv;
            TangentialElement coef = X.coefficient(Q(N), 0);
            int degree = -1;
            for (const auto& [w, f] : coef.terms())
              degree = std::max(degree, f.is_polynomial() ? f.num().degree() : -2);
            Params d{{"lambda_degree", std::to_string(degree)}, {"conjectured_degree", std::to_string(N - 1)}};
            return Outcome::pass(coef.str(), d);
          },
          false);
}

}  // namespace shiftop::verify
