#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

// Floating-point model-space checks on the upper half space R^{n+1}_+.
// Points are vectors p = (r, x_1, ..., x_n).
namespace shiftop::numeric {

// Value, gradient and Hessian carried through arithmetic (forward mode).
struct Jet2 {
  double v = 0;
  Eigen::VectorXd g;
  Eigen::MatrixXd h;

  static Jet2 constant(int dim, double c);
  static Jet2 variable(const Eigen::VectorXd& p, int i);
  int dim() const { return static_cast<int>(g.size()); }
  double laplacian() const { return h.trace(); }

  Jet2 operator-() const;
  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  friend Jet2 operator/(const Jet2& a, const Jet2& b);
  friend Jet2 operator*(Jet2 a, double s);
  friend Jet2 operator*(double s, Jet2 a) { return std::move(a) * s; }
  friend Jet2 operator+(Jet2 a, double s) { a.v += s; return a; }
};

// Applies a scalar function given f, f', f'' at a.v.
Jet2 chain(const Jet2& a, double f, double df, double d2f);
Jet2 exp(const Jet2& a);
Jet2 pow(const Jet2& a, double e);  // needs a.v > 0 unless e is a small integer

struct KernelParams {
  double lambda = 0;
  double nu = 0;
  int n = 3;
  std::vector<double> y;  // base point on the boundary; zero if empty
  int sign = +1;          // K^+ or K^- = r K^+_{lambda-1}
};

struct Field {
  double value = 0;
  Eigen::VectorXd grad;
  double lap = 0;  // full Laplacian of R^{n+1}
};

// Closed-form r^(lambda+nu-n-1) q^(-nu), q = |x-y|^2 + r^2, and K^-.
Field kernel_field(const KernelParams& k, const Eigen::VectorXd& p);
double kernel_value(const KernelParams& k, const Eigen::VectorXd& p);

using ScalarFn = std::function<double(const Eigen::VectorXd&)>;
// Fourth-order central differences with per-axis step h.
Eigen::VectorXd fd_gradient(const ScalarFn& f, const Eigen::VectorXd& p, double h);
double fd_laplacian(const ScalarFn& f, const Eigen::VectorXd& p, double h);

// P(lam) = r Lap - (2 lam - n - 3) d_r evaluated from a field.
double flat_P(const Field& f, double r, double lambda, int n);
double flat_P(const Jet2& f, double r, double lambda, int n);

struct NumericCheckConfig {
  int points = 100;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  double fd_step = 3e-3;  // relative to the local length scale
  int richardson_levels = 4;
};

struct NumericSummary {
  double max_residual = 0;  // relative, unless stated otherwise by the check
  int points = 0;
  std::string point_hash;  // FNV-1a of the sample coordinates
  std::vector<int> histogram;  // decades: [<1e-16, 1e-16.., ..., >=1e-4]
  void record(double residual);
};

// Deterministic sampler: seed_seq{seed, stream} driving mt19937_64.
class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t stream);
  double uniform(double lo, double hi);
  Eigen::VectorXd point(int n, double rmin, double rmax, double xabs);

 private:
  struct State;
  std::shared_ptr<State> s_;
};

NumericSummary kernel_fd_check(const KernelParams& k, const NumericCheckConfig& cfg);
NumericSummary flat_shift_check(const KernelParams& k, const NumericCheckConfig& cfg, bool on_diagonal = false);
// Delta_hyp u + nu (n - nu) u for the Poisson kernel u = (r/q)^nu.
NumericSummary poisson_eigen_check(int n, double nu, const NumericCheckConfig& cfg);
// S(g_hyp; lam)(r^(lam-n+1) u) against (lam+nu-n+1)(nu-lam-1) r^(lam-n) u.
NumericSummary hyperbolic_shift_check(int n, double lambda, double nu, const NumericCheckConfig& cfg);
// M_r shifts lambda: S(lam)(r F) = r S(lam-1) F - (2 lam - n + 1) F.
NumericSummary multiplication_shift_check(int n, double lambda, double nu, const NumericCheckConfig& cfg);

enum class ConformalMap { Identity, Dilation, Inversion, Translation };
struct MapParams {
  ConformalMap kind = ConformalMap::Identity;
  double a = 1;                // dilation factor
  std::vector<double> shift;   // translation along the boundary
};
// (gamma_* r / r)^(n-lam+2) gamma_* P f - P (gamma_* r / r)^(n-lam+1) gamma_* f for a Gaussian f.
NumericSummary equivariance_check(const MapParams& m, double lambda, int n, const NumericCheckConfig& cfg);

// Lanczos approximation, g = 7, 9 terms, reflection below 1/2.
double gamma_fn(double x);

// Restriction of the cylinder scattering matrix to E(mu) + E(mu).
Eigen::Matrix2d cylinder_scattering(double n, double mu, double lambda);
struct ResidueEstimate {
  Eigen::Matrix2d residue;
  Eigen::Matrix2d predicted;
  std::vector<double> eps;
  std::vector<double> diag_sequence;  // Richardson table diagonal, (0,0) entry
  bool converged = true;
};
// False when Gamma(lam - mu) or Gamma(lam - n + 1 + mu) has a pole at n/2 + N.
bool cylinder_regular(double n, double mu, int N);
ResidueEstimate cylinder_residue(double n, double mu, int N, const NumericCheckConfig& cfg);
double cylinder_residue_formula(double n, double mu, int N);

}  // namespace shiftop::numeric
