#include <doctest.h>

#include <cmath>
#include <numbers>

#include "shiftop/numeric.hpp"

namespace nm = shiftop::numeric;

TEST_CASE("gamma function") {
  CHECK(nm::gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(nm::gamma_fn(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(nm::gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(nm::gamma_fn(-0.5) == doctest::Approx(-2 * std::sqrt(std::numbers::pi)).epsilon(1e-13));
  double worst = 0;
  for (double x = 0.5; x <= 30; x += 0.37) worst = std::max(worst, std::abs(nm::gamma_fn(x) / std::tgamma(x) - 1));
  CHECK(worst < 1e-12);
  CHECK_THROWS_AS(nm::gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(nm::gamma_fn(-3.0), std::domain_error);
}

TEST_CASE("second-order jets agree with finite differences") {
  Eigen::VectorXd p(3);
  p << 0.7, -0.4, 0.3;
  auto build = [](const Eigen::VectorXd& q) {
    nm::Jet2 a = nm::Jet2::variable(q, 0), b = nm::Jet2::variable(q, 1), c = nm::Jet2::variable(q, 2);
    return nm::exp(a * b) * nm::pow(c + 2.0, 1.5) / (a * a + 1.0);
  };
  nm::Jet2 f = build(p);
  nm::ScalarFn fn = [&](const Eigen::VectorXd& q) { return build(q).v; };
  Eigen::VectorXd g = nm::fd_gradient(fn, p, 1e-3);
  CHECK((g - f.g).norm() / f.g.norm() < 1e-9);
  CHECK(std::abs(nm::fd_laplacian(fn, p, 1e-3) - f.laplacian()) / std::abs(f.laplacian()) < 1e-7);
}

TEST_CASE("kernel closed forms") {
  nm::KernelParams k{1.9, 0.0, 3, {0.1, 0.2, -0.3}, +1};
  Eigen::VectorXd p(4);
  p << 0.8, 0.5, -0.1, 0.4;
  nm::Field f = nm::kernel_field(k, p);
  CHECK(f.value == doctest::Approx(std::pow(0.8, 1.9 - 4)).epsilon(1e-14));
  nm::KernelParams m = k;
  m.sign = -1;
  nm::KernelParams lower = k;
  lower.lambda -= 1;
  CHECK(nm::kernel_value(m, p) == doctest::Approx(0.8 * nm::kernel_value(lower, p)).epsilon(1e-14));
  nm::NumericCheckConfig cfg;
  CHECK(nm::kernel_fd_check({2.5, 1.2, 3, {}, +1}, cfg).max_residual < 1e-6);
  CHECK(nm::flat_shift_check({2.5, 1.2, 3, {}, -1}, cfg).max_residual < 1e-10);
}

TEST_CASE("sampler and summaries are deterministic") {
  nm::Sampler a(42, 3), b(42, 3), c(42, 4);
  Eigen::VectorXd pa = a.point(3, 0.2, 2.0, 1.0), pb = b.point(3, 0.2, 2.0, 1.0), pc = c.point(3, 0.2, 2.0, 1.0);
  CHECK(pa == pb);
  CHECK(pa != pc);
  CHECK(pa[0] >= 0.2);
  CHECK(pa[0] <= 2.0);

  nm::NumericCheckConfig cfg;
  cfg.seed = 7;
  nm::NumericSummary s1 = nm::poisson_eigen_check(3, 1.7, cfg), s2 = nm::poisson_eigen_check(3, 1.7, cfg);
  CHECK(s1.point_hash == s2.point_hash);
  CHECK(s1.max_residual == s2.max_residual);
  CHECK(s1.points == 100);
  CHECK(s1.histogram.size() == 14);
  int total = 0;
  for (int h : s1.histogram) total += h;
  CHECK(total == s1.points);
  cfg.seed = 8;
  CHECK(nm::poisson_eigen_check(3, 1.7, cfg).point_hash != s1.point_hash);
}

TEST_CASE("cylinder scattering residues") {
  nm::NumericCheckConfig cfg;
  nm::ResidueEstimate e = nm::cylinder_residue(5, 3.0 / 7, 1, cfg);
  double pred = nm::cylinder_residue_formula(5, 3.0 / 7, 1);
  CHECK(e.converged);
  CHECK(std::abs(e.residue(0, 0) - pred) / std::abs(pred) < 1e-5);
  CHECK(std::abs(e.residue(0, 1)) < 1e-7);
  // n = 4, mu = 1: a zero factor in the product
  CHECK(nm::cylinder_residue_formula(4, 1, 1) == doctest::Approx(0.0));
  CHECK(std::abs(nm::cylinder_residue(4, 1, 1, cfg).residue(0, 0)) < 1e-9);
  CHECK_FALSE(nm::cylinder_regular(5, 0.5, 1));
}
