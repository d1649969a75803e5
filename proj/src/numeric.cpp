#include "shiftop/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <stdexcept>

namespace shiftop::numeric {

Jet2 Jet2::constant(int dim, double c) {
  Jet2 j;
  j.v = c;
  j.g = Eigen::VectorXd::Zero(dim);
  j.h = Eigen::MatrixXd::Zero(dim, dim);
  return j;
}

Jet2 Jet2::variable(const Eigen::VectorXd& p, int i) {
  Jet2 j = constant(static_cast<int>(p.size()), p[i]);
  j.g[i] = 1;
  return j;
}

Jet2 Jet2::operator-() const {
  Jet2 j = *this;
  j.v = -j.v;
  j.g = -j.g;
  j.h = -j.h;
  return j;
}

Jet2& Jet2::operator+=(const Jet2& o) {
  v += o.v;
  g += o.g;
  h += o.h;
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) {
  v -= o.v;
  g -= o.g;
  h -= o.h;
  return *this;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 j;
  j.v = a.v * b.v;
  j.g = a.v * b.g + b.v * a.g;
  j.h = a.v * b.h + b.v * a.h + a.g * b.g.transpose() + b.g * a.g.transpose();
  return j;
}

Jet2 operator*(Jet2 a, double s) {
  a.v *= s;
  a.g *= s;
  a.h *= s;
  return a;
}

Jet2 chain(const Jet2& a, double f, double df, double d2f) {
  Jet2 j;
  j.v = f;
  j.g = df * a.g;
  j.h = df * a.h + d2f * a.g * a.g.transpose();
  return j;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.v == 0) throw std::domain_error("Jet2 division by zero");
  double iv = 1 / b.v;
  return a * chain(b, iv, -iv * iv, 2 * iv * iv * iv);
}

Jet2 exp(const Jet2& a) {
  double e = std::exp(a.v);
  return chain(a, e, e, e);
}

Jet2 pow(const Jet2& a, double e) {
  if (a.v <= 0 && e != std::floor(e)) throw std::domain_error("Jet2 pow of a non-positive base");
  if (a.v == 0) {
    if (e < 0) throw std::domain_error("Jet2 pow at zero");
    if (e == 0) return Jet2::constant(a.dim(), 1);
    return chain(a, 0, e == 1 ? 1 : 0, e == 2 ? 2 : 0);
  }
  double p = std::pow(a.v, e);
  return chain(a, p, e * p / a.v, e * (e - 1) * p / (a.v * a.v));
}

namespace {

Field kernel_plus(double lambda, double nu, int n, const std::vector<double>& y, const Eigen::VectorXd& p) {
  double r = p[0];
  if (r == 0) throw std::domain_error("kernel evaluated at r = 0");
  double s = 0;
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) {
    d[i] = p[i + 1] - (y.empty() ? 0.0 : y[i]);
    s += d[i] * d[i];
  }
  double q = s + r * r;
  if (q == 0) throw std::domain_error("kernel evaluated at q = 0");
  double a = lambda + nu - n - 1;
  // base = r^a q^-nu; everything else is a power-law factor of it
  double base = std::pow(std::abs(r), a) * std::pow(q, -nu);
  double iq = 1 / q, ir = 1 / r;
  Field f;
  f.value = base;
  f.grad.resize(n + 1);
  f.grad[0] = base * (a * ir - 2 * nu * r * iq);
  for (int i = 0; i < n; ++i) f.grad[i + 1] = -2 * nu * d[i] * base * iq;
  double drr = base * (a * (a - 1) * ir * ir - 2 * nu * (2 * a + 1) * iq + 4 * nu * (nu + 1) * r * r * iq * iq);
  double dxx = base * (-2 * nu * n * iq + 4 * nu * (nu + 1) * s * iq * iq);
  f.lap = drr + dxx;
  return f;
}

std::uint64_t fnv(std::uint64_t h, const Eigen::VectorXd& p) {
  for (int i = 0; i < p.size(); ++i) {
    unsigned char b[sizeof(double)];
    double x = p[i];
    std::memcpy(b, &x, sizeof x);
    for (unsigned char c : b) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 15];
  return s;
}

struct PointLog {
  std::uint64_t h = 14695981039346656037ULL;
  void add(const Eigen::VectorXd& p) { h = fnv(h, p); }
};

double rel(double residual, std::initializer_list<double> scales) {
  double s = 1e-300;
  for (double x : scales) s = std::max(s, std::abs(x));
  return std::abs(residual) / s;
}

Jet2 coordinate_sq_norm(const std::vector<Jet2>& v, size_t from = 0) {
  Jet2 s = Jet2::constant(v[0].dim(), 0);
  for (size_t i = from; i < v.size(); ++i) s += v[i] * v[i];
  return s;
}

std::vector<Jet2> variables(const Eigen::VectorXd& p) {
  std::vector<Jet2> v;
  for (int i = 0; i < p.size(); ++i) v.push_back(Jet2::variable(p, i));
  return v;
}

// Poisson kernel (r/q)^nu with q = |x|^2 + r^2
Jet2 poisson(const std::vector<Jet2>& v, double nu) { return pow(v[0] / coordinate_sq_norm(v), nu); }

// Gaussian bump with a linear factor; smooth everywhere
Jet2 test_function(const std::vector<Jet2>& v) {
  int dim = v[0].dim();
  Jet2 s = Jet2::constant(dim, 0);
  for (int i = 0; i < dim; ++i) {
    double c = i == 0 ? 0.7 : 0.3 - 0.25 * i;
    Jet2 d = v[i] + (-c);
    s += d * d;
  }
  return exp(s * -0.8) * (v[0] * 0.3 + (v.size() > 1 ? v[1] * 0.2 : Jet2::constant(dim, 0)) + 1.0);
}

double shift_S(const Jet2& f, double lambda, int n, double r) {
  return r * f.laplacian() - (2 * lambda - n + 1) * f.g[0];
}

}  // namespace

Field kernel_field(const KernelParams& k, const Eigen::VectorXd& p) {
  if (k.sign > 0) return kernel_plus(k.lambda, k.nu, k.n, k.y, p);
  Field f = kernel_plus(k.lambda - 1, k.nu, k.n, k.y, p);
  double r = p[0];
  Field g;
  g.value = r * f.value;
  g.grad = r * f.grad;
  g.grad[0] += f.value;
  g.lap = r * f.lap + 2 * f.grad[0];
  return g;
}

double kernel_value(const KernelParams& k, const Eigen::VectorXd& p) { return kernel_field(k, p).value; }

Eigen::VectorXd fd_gradient(const ScalarFn& f, const Eigen::VectorXd& p, double h) {
  Eigen::VectorXd g(p.size());
  for (int i = 0; i < p.size(); ++i) {
    auto at = [&](double t) {
      Eigen::VectorXd q = p;
      q[i] += t;
      return f(q);
    };
    g[i] = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
  }
  return g;
}

double fd_laplacian(const ScalarFn& f, const Eigen::VectorXd& p, double h) {
  double f0 = f(p), lap = 0;
  for (int i = 0; i < p.size(); ++i) {
    auto at = [&](double t) {
      Eigen::VectorXd q = p;
      q[i] += t;
      return f(q);
    };
    lap += (-at(2 * h) + 16 * at(h) - 30 * f0 + 16 * at(-h) - at(-2 * h)) / (12 * h * h);
  }
  return lap;
}

double flat_P(const Field& f, double r, double lambda, int n) { return r * f.lap - (2 * lambda - n - 3) * f.grad[0]; }
double flat_P(const Jet2& f, double r, double lambda, int n) { return r * f.laplacian() - (2 * lambda - n - 3) * f.g[0]; }

void NumericSummary::record(double residual) {
  if (histogram.empty()) histogram.assign(14, 0);
  int bin = residual <= 0 ? 0 : static_cast<int>(std::floor(std::log10(residual))) + 17;
  histogram[std::clamp(bin, 0, 13)]++;
  max_residual = std::max(max_residual, residual);
  ++points;
}

struct Sampler::State {
  std::mt19937_64 eng;
};

Sampler::Sampler(std::uint64_t seed, std::uint64_t stream) : s_(std::make_shared<State>()) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  s_->eng.seed(seq);
}

double Sampler::uniform(double lo, double hi) {
  // 53 random bits; avoids the implementation-defined distributions
  double u = static_cast<double>(s_->eng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Eigen::VectorXd Sampler::point(int n, double rmin, double rmax, double xabs) {
  Eigen::VectorXd p(n + 1);
  p[0] = uniform(rmin, rmax);
  for (int i = 1; i <= n; ++i) p[i] = uniform(-xabs, xabs);
  return p;
}

namespace {

template <class F>
NumericSummary sample(const NumericCheckConfig& cfg, std::uint64_t stream, int n, double xabs, F&& residual_at,
                      double rmin = 0.2, double rmax = 2.0) {
  Sampler s(cfg.seed, stream);
  NumericSummary out;
  PointLog log;
  for (int i = 0; i < cfg.points; ++i) {
    Eigen::VectorXd p = s.point(n, rmin, rmax, xabs);
    log.add(p);
    out.record(residual_at(p));
  }
  out.point_hash = hex(log.h);
  return out;
}

std::uint64_t tag(const char* s, std::initializer_list<double> xs) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const char* c = s; *c; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 1099511628211ULL;
  }
  Eigen::VectorXd v(xs.size());
  int i = 0;
  for (double x : xs) v[i++] = x;
  return fnv(h, v);
}

}  // namespace

NumericSummary kernel_fd_check(const KernelParams& k, const NumericCheckConfig& cfg) {
  return sample(cfg, tag("kernel-fd", {k.lambda, k.nu, double(k.n), double(k.sign)}), k.n, 1.5, [&](const Eigen::VectorXd& p0) {
    Eigen::VectorXd p = p0;
    for (int i = 0; i < k.n && i < int(k.y.size()); ++i) p[i + 1] += k.y[i];
    double q = 0;
    for (int i = 1; i <= k.n; ++i) q += std::pow(p[i] - (k.y.empty() ? 0.0 : k.y[i - 1]), 2);
    q += p[0] * p[0];
    double h = cfg.fd_step * std::min(p[0], std::sqrt(q));
    Field f = kernel_field(k, p);
    ScalarFn fn = [&](const Eigen::VectorXd& x) { return kernel_value(k, x); };
    Eigen::VectorXd g = fd_gradient(fn, p, h);
    double lap = fd_laplacian(fn, p, h);
    double gs = std::max(f.grad.cwiseAbs().maxCoeff(), std::abs(f.value) / p[0]);
    double err = (g - f.grad).cwiseAbs().maxCoeff() / gs;
    double ls = std::max({std::abs(f.lap), std::abs(f.value) / (p[0] * p[0]), std::abs(f.grad[0]) / p[0]});
    return std::max(err, std::abs(lap - f.lap) / ls);
  });
}

NumericSummary flat_shift_check(const KernelParams& k, const NumericCheckConfig& cfg, bool on_diagonal) {
  KernelParams target = k;
  target.lambda = k.lambda - 1;
  target.sign = -k.sign;
  double c = (k.lambda + k.nu - k.n - 1) * (k.nu - k.lambda + 1);
  auto stream = tag("flat-shift", {k.lambda, k.nu, double(k.n), double(k.sign), double(on_diagonal)});
  return sample(cfg, stream, k.n, 1.5, [&](const Eigen::VectorXd& p0) {
    Eigen::VectorXd p = p0;
    for (int i = 0; i < k.n; ++i) p[i + 1] = on_diagonal ? (k.y.empty() ? 0.0 : k.y[i]) : p[i + 1] + (k.y.empty() ? 0.0 : k.y[i]);
    double r = p[0];
    Field f = kernel_field(k, p);
    double lhs = flat_P(f, r, k.lambda, k.n);
    double rhs = c * kernel_value(target, p);
    return rel(lhs - rhs, {r * f.lap, (2 * k.lambda - k.n - 3) * f.grad[0], rhs});
  });
}

NumericSummary poisson_eigen_check(int n, double nu, const NumericCheckConfig& cfg) {
  return sample(cfg, tag("poisson-eigen", {double(n), nu}), n, 1.5, [&](const Eigen::VectorXd& p) {
    auto v = variables(p);
    Jet2 u = poisson(v, nu);
    double r = p[0];
    double a = r * r * u.laplacian(), b = (n - 1) * r * u.g[0], c = nu * (n - nu) * u.v;
    return rel(a - b + c, {a, b, c});
  });
}

NumericSummary hyperbolic_shift_check(int n, double lambda, double nu, const NumericCheckConfig& cfg) {
  double c = (lambda + nu - n + 1) * (nu - lambda - 1);
  return sample(cfg, tag("hyperbolic-shift", {double(n), lambda, nu}), n, 1.5, [&](const Eigen::VectorXd& p) {
    auto v = variables(p);
    Jet2 u = poisson(v, nu);
    Jet2 F = pow(v[0], lambda - n + 1) * u;
    double r = p[0];
    double lhs = shift_S(F, lambda, n, r);
    double rhs = c * std::pow(r, lambda - n) * u.v;
    return rel(lhs - rhs, {r * F.laplacian(), (2 * lambda - n + 1) * F.g[0], rhs});
  });
}

NumericSummary multiplication_shift_check(int n, double lambda, double nu, const NumericCheckConfig& cfg) {
  return sample(cfg, tag("mult-shift", {double(n), lambda, nu}), n, 1.5, [&](const Eigen::VectorXd& p) {
    auto v = variables(p);
    Jet2 F = test_function(v) * pow(v[0], nu);
    double r = p[0];
    double lhs = shift_S(v[0] * F, lambda, n, r);
    double rhs = r * shift_S(F, lambda - 1, n, r) - (2 * lambda - n + 1) * F.v;
    return rel(lhs - rhs, {lhs, r * shift_S(F, lambda - 1, n, r), (2 * lambda - n + 1) * F.v});
  });
}

NumericSummary equivariance_check(const MapParams& m, double lambda, int n, const NumericCheckConfig& cfg) {
  auto inverse = [&](const std::vector<Jet2>& v) {
    std::vector<Jet2> w = v;
    switch (m.kind) {
      case ConformalMap::Identity:
        break;
      case ConformalMap::Dilation:
        for (auto& x : w) x = x * (1 / m.a);
        break;
      case ConformalMap::Inversion: {
        Jet2 s = coordinate_sq_norm(v);
        for (auto& x : w) x = x / s;
        break;
      }
      case ConformalMap::Translation:
        for (int i = 0; i < n; ++i) w[i + 1] = w[i + 1] + (i < int(m.shift.size()) ? -m.shift[i] : 0.0);
        break;
    }
    return w;
  };
  double stream_a = m.kind == ConformalMap::Dilation ? m.a : 0;
  auto stream = tag("equivariance", {double(int(m.kind)), stream_a, lambda, double(n)});
  return sample(
      cfg, stream, n, 1.0,
      [&](const Eigen::VectorXd& p) {
        double r = p[0];
        if (m.kind == ConformalMap::Inversion && p.squaredNorm() < 0.25)
          throw std::domain_error("sample point too close to the inversion centre");
        // left side: the operator evaluated at gamma^-1 p, then rescaled
        std::vector<Jet2> at_p = variables(p);
        std::vector<Jet2> pre = inverse(at_p);
        Eigen::VectorXd q(p.size());
        for (int i = 0; i < p.size(); ++i) q[i] = pre[i].v;
        Jet2 fq = test_function(variables(q));
        double rho = q[0] / r;
        double lhs = std::pow(rho, n - lambda + 2) * flat_P(fq, q[0], lambda, n);
        // right side: the operator applied to the rescaled pull-back
        Jet2 G = pow(pre[0] / at_p[0], n - lambda + 1) * test_function(pre);
        double rhs = flat_P(G, r, lambda, n);
        return rel(lhs - rhs, {lhs, r * G.laplacian(), (2 * lambda - n - 3) * G.g[0]});
      },
      0.5, 1.5);
}

Eigen::Matrix2d cylinder_scattering(double n, double mu, double lambda) {
  using std::numbers::pi;
  double pre = std::pow(2.0, n - 2 * lambda) / pi * gamma_fn(n / 2 - lambda) / gamma_fn(lambda - n / 2) *
               gamma_fn(lambda - mu) * gamma_fn(lambda - (n - 1 - mu));
  double d = std::sin(pi * (n / 2 - mu)), o = std::sin(pi * (n / 2 - lambda));
  Eigen::Matrix2d m;
  m << d, o, o, d;
  return pre * m;
}

double cylinder_residue_formula(double n, double mu, int N) {
  double f = 1;
  for (int k = 1; k <= N; ++k) f *= k;
  double c = -1 / (std::pow(4.0, N) * f * (f / N));
  for (int i = 0; i < N; ++i) {
    double j = n / 2 + i;
    c *= -mu * (n - 1 - mu) + j * (n - 1 - j);
  }
  return c;
}

bool cylinder_regular(double n, double mu, int N) {
  double l0 = n / 2 + N;
  auto pole = [](double x) { return x <= 0 && std::abs(x - std::round(x)) < 1e-12; };
  return !pole(l0 - mu) && !pole(l0 - (n - 1 - mu));
}

ResidueEstimate cylinder_residue(double n, double mu, int N, const NumericCheckConfig& cfg) {
  double l0 = n / 2 + N;
  if (!cylinder_regular(n, mu, N)) throw std::domain_error("a Gamma factor has a pole at the residue point");
  ResidueEstimate out;
  int levels = std::max(1, cfg.richardson_levels);
  std::vector<std::vector<Eigen::Matrix2d>> T(levels);
  // The Laurent expansion converges up to the nearest other Gamma pole; start well inside it.
  double dist = 1;
  for (double base : {mu, n - 1 - mu}) {
    // poles of Gamma(lam - base) sit at lam = base - k, k >= 0
    double k0 = std::round(base - l0);
    for (double k = std::max(0.0, k0 - 1); k <= std::max(0.0, k0 + 1); ++k) {
      double d = std::abs(base - k - l0);
      if (d > 1e-12) dist = std::min(dist, d);
    }
  }
  double eps = std::min(1e-2, dist / 20);
  for (int i = 0; i < levels; ++i, eps /= 2) {
    out.eps.push_back(eps);
    // symmetric limit of (lam - lam0) S(lam): error is even in eps
    T[i].push_back(0.5 * eps * (cylinder_scattering(n, mu, l0 + eps) - cylinder_scattering(n, mu, l0 - eps)));
    double f = 4;
    for (int k = 1; k <= i; ++k, f *= 4) T[i].push_back((f * T[i][k - 1] - T[i - 1][k - 1]) / (f - 1));
    out.diag_sequence.push_back(T[i][i](0, 0));
  }
  out.residue = T[levels - 1][levels - 1];
  out.predicted = cylinder_residue_formula(n, mu, N) * Eigen::Matrix2d::Identity();
  if (levels > 1) {
    double last = (T[levels - 1][levels - 1] - T[levels - 1][levels - 2]).cwiseAbs().maxCoeff();
    double scale = std::max(1e-300, out.residue.cwiseAbs().maxCoeff());
    out.converged = last <= 1e-3 * scale || last < 1e-10;
  }
  return out;
}

}  // namespace shiftop::numeric
