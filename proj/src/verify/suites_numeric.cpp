#include <cmath>
#include <cstdio>
#include <numbers>

#include "shiftop/conformal.hpp"
#include "shiftop/numeric.hpp"
#include "suites_common.hpp"

namespace shiftop::verify {
namespace {

namespace nm = shiftop::numeric;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string plain(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string histogram_str(const std::vector<int>& h) {
  std::string s;
  for (size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
  return s;
}

Outcome judge(const nm::NumericSummary& s, double tol, std::uint64_t seed) {
  Params d{{"tolerance", sci(tol)}, {"points", std::to_string(s.points)}, {"seed", std::to_string(seed)}};
  if (!s.point_hash.empty()) d.emplace_back("point_hash", s.point_hash);
  d.emplace_back("histogram", histogram_str(s.histogram));
  bool ok = std::isfinite(s.max_residual) && s.max_residual < tol;
  return ok ? Outcome::pass(sci(s.max_residual), d) : Outcome::fail(sci(s.max_residual), d);
}

nm::NumericCheckConfig config(const SuiteConfig& cfg) {
  nm::NumericCheckConfig c;
  c.seed = cfg.seed;
  return c;
}

std::vector<double> base_point(int n) {
  std::vector<double> y{0.3, -0.2, 0.1, 0.25, -0.15, 0.05, 0.2, -0.1, 0.15};
  y.resize(n, 0.0);
  return y;
}

double eval_series(const ScalarSeries& s, double r) {
  double out = 0;
  for (const auto& [e, c] : s.terms()) out += to_double(c.constant_term()) * std::pow(r, to_double(e));
  return out;
}

nm::Jet2 series_jet(const ScalarSeries& s, const Eigen::VectorXd& p) {
  nm::Jet2 r = nm::Jet2::variable(p, 0);
  nm::Jet2 out = nm::Jet2::constant(int(p.size()), 0.0);
  for (const auto& [e, c] : s.terms()) out += nm::pow(r, to_double(e)) * to_double(c.constant_term());
  return out;
}

}  // namespace

void add_numeric_flat(Builder& b) {
  const nm::NumericCheckConfig nc = config(b.cfg);
  const std::uint64_t seed = b.cfg.seed;

  for (int n : {3, 4})
    for (int sign : {1, -1}) {
      nm::KernelParams k{2.5, 1.2, n, base_point(n), sign};
      Params p{{"n", std::to_string(n)}, {"sign", sign > 0 ? "+" : "-"}, {"lambda", "2.5"}, {"nu", "1.2"}};
      b.add("numeric-flat.kernel-fd", p, [=] { return judge(nm::kernel_fd_check(k, nc), 1e-6, seed); });
    }

  b.add("numeric-flat.kernel-trivial", {{"n", "3"}}, [=] {
    nm::Sampler s(seed, 11);
    nm::NumericSummary sum;
    const int n = 3;
    std::vector<double> y = base_point(n);
    for (int i = 0; i < nc.points; ++i) {
      Eigen::VectorXd p = s.point(n, 0.2, 2.0, 1.5);
      double q = p[0] * p[0];
      for (int j = 1; j <= n; ++j) q += std::pow(p[j] - y[j - 1], 2);
      // nu = 0: a pure power of r; lambda + nu = n + 1: a pure power of q.
      double a = nm::kernel_value({1.7, 0.0, n, y, 1}, p), ea = std::pow(p[0], 1.7 - n - 1);
      double c = nm::kernel_value({n + 1 - 0.6, 0.6, n, y, 1}, p), ec = std::pow(q, -0.6);
      sum.record(std::max(std::abs(a - ea) / std::abs(ea), std::abs(c - ec) / std::abs(ec)));
    }
    return judge(sum, 1e-13, seed);
  });

  struct ShiftCase {
    std::string name;
    double lambda, nu;
    int sign;
    bool diag;
  };
  for (const ShiftCase& c : {ShiftCase{"generic", 2.5, 1.2, 1, false}, ShiftCase{"generic", 2.5, 1.2, -1, false},
                             ShiftCase{"zero-factor", 2.5, 1.5, 1, false}, ShiftCase{"diagonal", 2.5, 1.2, 1, true},
                             ShiftCase{"diagonal", 2.5, 1.2, -1, true}}) {
    Params p{{"case", c.name}, {"sign", c.sign > 0 ? "+" : "-"}, {"lambda", plain(c.lambda)}, {"nu", plain(c.nu)}};
    nm::KernelParams k{c.lambda, c.nu, 3, base_point(3), c.sign};
    b.add("numeric-flat.kernel-shift", p, [=] { return judge(nm::flat_shift_check(k, nc, c.diag), 1e-10, seed); });
  }

  for (int n : {3, 4})
    for (double nu : {1.7, 0.4})
      b.add("numeric-flat.poisson-eigen", {{"n", std::to_string(n)}, {"nu", plain(nu)}},
            [=] { return judge(nm::poisson_eigen_check(n, nu, nc), 1e-10, seed); });

  for (auto [lam, nu, name] : {std::tuple{0.9, 1.7, "generic"}, std::tuple{0.7, 1.7, "zero-factor"},
                               std::tuple{2.2, 0.6, "generic"}}) {
    Params p{{"case", name}, {"n", "3"}, {"lambda", plain(lam)}, {"nu", plain(nu)}};
    b.add("numeric-flat.hyperbolic-shift", p,
          [=] { return judge(nm::hyperbolic_shift_check(3, lam, nu, nc), 1e-10, seed); });
  }
  b.add("numeric-flat.mult-shift", {{"n", "3"}, {"lambda", "0.9"}, {"nu", "1.7"}},
        [=] { return judge(nm::multiplication_shift_check(3, 0.9, 1.7, nc), 1e-10, seed); });

  for (auto [kind, name] : {std::pair{nm::ConformalMap::Identity, "identity"},
                            std::pair{nm::ConformalMap::Dilation, "dilation"},
                            std::pair{nm::ConformalMap::Inversion, "inversion"},
                            std::pair{nm::ConformalMap::Translation, "translation"}}) {
    nm::MapParams m{kind, 2.0, {0.4, -0.3, 0.2}};
    b.add("numeric-flat.equivariance", {{"map", name}, {"n", "3"}, {"lambda", "1.3"}},
          [=] { return judge(nm::equivariance_check(m, 1.3, 3, nc), 1e-8, seed); });
  }

  b.add("numeric-flat.gamma", {}, [=] {
    nm::NumericSummary sum;
    for (double x = 0.5; x <= 30.0; x += 0.0625) sum.record(std::abs(nm::gamma_fn(x) / std::tgamma(x) - 1));
    for (double x : {-0.5, -1.5, -2.25, -4.75}) sum.record(std::abs(nm::gamma_fn(x) / std::tgamma(x) - 1));
    sum.record(std::abs(nm::gamma_fn(1.0) - 1));
    sum.record(std::abs(nm::gamma_fn(0.5) / std::sqrt(std::numbers::pi) - 1));
    sum.record(std::abs(nm::gamma_fn(5.0) / 24 - 1));
    Outcome o = judge(sum, 1e-12, seed);
    bool pole = false;
    try {
      nm::gamma_fn(-2.0);
    } catch (const std::domain_error&) {
      pole = true;
    }
    if (!pole) return Outcome::fail("gamma_fn(-2) returned instead of reporting a pole");
    return o;
  });

  b.add("numeric-flat.bridge", {{"n", "3"}, {"lambda", "7/3"}}, [=] {
    const int n = 3;
    const Rational lam(7, 3);
    Context ctx{Rational(n), TangentialMode::Einstein, Rational(0)};
    ScalarSeries f;
    f.add(Rational(0), ScalarPoly(1));
    f.add(Rational(1), ScalarPoly(2));
    f.add(Rational(3), ScalarPoly(-1));
    f.add(Rational(4), ScalarPoly(Rational(1, 2)));
    ScalarSeries pf = flat_shift_P(ctx, R(lam)).apply(f);
    ScalarSeries g = flat_shift_P(ctx, R(lam + 1)).apply(f);
    ScalarSeries ppf = (flat_shift_P(ctx, R(lam)) * flat_shift_P(ctx, R(lam + 1))).apply(f);
    nm::Sampler s(seed, 23);
    nm::NumericSummary sum;
    const double l = to_double(lam);
    for (int i = 0; i < nc.points; ++i) {
      Eigen::VectorXd p = s.point(n, 0.2, 2.0, 1.0);
      double r = p[0];
      nm::Jet2 F = series_jet(f, p), G = series_jet(g, p);
      double a = nm::flat_P(F, r, l, n), ea = eval_series(pf, r);
      double c = nm::flat_P(G, r, l, n), ec = eval_series(ppf, r);
      double scale = std::max({1.0, std::abs(ea), std::abs(ec)});
      sum.record(std::max(std::abs(a - ea), std::abs(c - ec)) / scale);
    }
    return judge(sum, 1e-12, seed);
  });
}

void add_numeric_scattering(Builder& b) {
  const nm::NumericCheckConfig nc = config(b.cfg);
  struct Case {
    double n, mu;
    std::string n_str, mu_str;
  };
  std::vector<Case> cases;
  for (const auto& n : b.cfg.ns)
    for (const auto& mu : b.cfg.mus) cases.push_back({to_double(n), to_double(mu), to_string(n), to_string(mu)});
  cases.push_back({4, 0.3, "4", "3/10"});
  cases.push_back({4, 1, "4", "1"});

  for (const Case& c : cases)
    for (int N = 1; N <= 2; ++N)
      b.add("numeric-scattering.residue", {{"n", c.n_str}, {"mu", c.mu_str}, {"N", std::to_string(N)}}, [=] {
        if (!nm::cylinder_regular(c.n, c.mu, N))
          return Outcome::skip("Gamma factor has a pole at lambda = n/2 + N; the residue is not simple there");
        nm::ResidueEstimate e = nm::cylinder_residue(c.n, c.mu, N, nc);
        double pred = e.predicted(0, 0);
        double off = std::max(std::abs(e.residue(0, 1)), std::abs(e.residue(1, 0)));
        double diag = std::max(std::abs(e.residue(0, 0) - pred), std::abs(e.residue(1, 1) - pred));
        double tol = N == 1 ? 1e-5 : 1e-4;
        Params d{{"numeric", sci(e.residue(0, 0))}, {"predicted", sci(pred)}, {"off_diagonal", sci(off)},
                 {"richardson_converged", e.converged ? "true" : "false"}};
        if (!e.converged) return Outcome::fail("Richardson extrapolation did not converge", d);
        if (off >= 1e-7) return Outcome::fail("off-diagonal residue " + sci(off), d);
        // Degenerate points: both sides vanish and a ratio is meaningless.
        if (std::abs(pred) < 1e-12) {
          d.emplace_back("comparison", "absolute 1e-9");
          return Outcome::from(diag < 1e-9, sci(diag), d);
        }
        d.emplace_back("comparison", "relative " + sci(tol));
        double relerr = diag / std::abs(pred);
        return relerr < tol ? Outcome::pass(sci(relerr), d) : Outcome::fail(sci(relerr), d);
      });
}

}  // namespace shiftop::verify
