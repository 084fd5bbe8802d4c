#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace supermech {

// Exact coefficients for every symbolic object in the library.
using Rational = mpq_class;

std::string to_string(const Rational& r);
double to_double(const Rational& r);

// Accepts integers, fractions ("3/4") and decimal literals with an optional
// exponent ("0.125", "1e-3"). Decimal literals are converted exactly.
Rational parse_rational(std::string_view text);

Rational factorial(int n);

}  // namespace supermech
