#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "shiftop/numeric.hpp"

namespace shiftop::numeric {
namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr const char* kLanczos[] = {
    "0.99999999999980993227684700473478",
    "676.520368121885098567009190444019",
    "-1259.13921672240287047156078755283",
    "771.3234287776530788486528258894",
    "-176.61502916214059906584551354",
    "12.507343278686904814458936853",
    "-0.13857109526572011689554707",
    "9.984369578019570859563e-6",
    "1.50563273514931155834e-7",
};
constexpr double kG = 7;

struct Coeffs {
  double c[9];
  Coeffs() {
    for (int i = 0; i < 9; ++i) c[i] = std::strtod(kLanczos[i], nullptr);
  }
};

const Coeffs& coeffs() {
  static const Coeffs c;
  return c;
}

}  // namespace

double gamma_fn(double x) {
  if (x <= 0 && x == std::floor(x)) throw std::domain_error("gamma_fn: pole at a non-positive integer");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1 - x));
  const double* c = coeffs().c;
  x -= 1;
  double a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
  double t = x + kG + 0.5;
  return std::sqrt(2 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

}  // namespace shiftop::numeric
