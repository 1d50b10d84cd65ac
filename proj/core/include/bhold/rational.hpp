#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace bhold {

/// Arbitrary-precision exact rational.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "3", "-2/5", "0.125", "1e-3", "2.5e2". Decimal input is converted
/// exactly (0.1 becomes 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

double to_double(const Rational& q);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

}  // namespace bhold
