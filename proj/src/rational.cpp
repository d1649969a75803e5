#include "shiftop/rational.hpp"

#include <cctype>
#include <climits>

namespace shiftop {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational: '" + std::string(text) + "'");
  mpz_class p(strip_plus(num));
  mpz_class q{std::string(den)};
  if (q == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational ratio(long p, long q) {
  if (q == 0) throw std::domain_error("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

long to_long(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) throw std::domain_error("not a machine integer: " + q.get_str());
  return q.get_num().get_si();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational rational_pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    return rational_pow(Rational(1) / base, -exponent);
  }
  Rational result(1), b(base);
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

Rational factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f);
}

Rational binomial(long top, long k) {
  if (k < 0) return Rational(0);
  Rational r(1);
  for (long i = 0; i < k; ++i) r = r * Rational(top - i) / Rational(i + 1);
  return r;
}

Rational pochhammer(const Rational& a, unsigned k) {
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) r *= a + i;
  return r;
}

Rational falling(const Rational& a, unsigned k) {
  Rational r(1);
  for (unsigned i = 0; i < k; ++i) r *= a - i;
  return r;
}

Rational double_factorial(long k) {
  Rational r(1);
  for (long i = k; i > 1; i -= 2) r *= i;
  return r;
}

}  // namespace shiftop
