#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace shiftop {

using Rational = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Accepts "p", "p/q", with optional sign. Result is canonical.
Rational parse_rational(std::string_view text);
// p/q in lowest terms; mpq_class(p, q) alone is not canonical.
Rational ratio(long p, long q);
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);
long to_long(const Rational& q);  // throws unless integral and in range
double to_double(const Rational& q);

Rational rational_pow(const Rational& base, long exponent);
Rational factorial(unsigned k);
Rational binomial(long top, long k);
Rational pochhammer(const Rational& a, unsigned k);  // a(a+1)...(a+k-1)
Rational falling(const Rational& a, unsigned k);     // a(a-1)...(a-k+1)
Rational double_factorial(long k);

}  // namespace shiftop
