#include "bhold/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "bhold/error.hpp"

namespace bhold {
namespace {

using boost::multiprecision::cpp_int;

cpp_int pow10(long e) {
  cpp_int r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  auto fail = [&] { throw Error(ErrorCode::InvalidParams, "not a number: '" + std::string(whole) + "'"); };
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  cpp_int digits = 0;
  long frac = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      any = true;
      if (dot) ++frac;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) fail();
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
    if (i >= s.size()) fail();
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) fail();
      exp10 = exp10 * 10 + (s[i] - '0');
      if (exp10 > 4000) fail();
    }
    if (eneg) exp10 = -exp10;
  }
  if (i != s.size()) fail();
  long e = exp10 - frac;
  Rational q = e >= 0 ? Rational(digits * pow10(e)) : Rational(digits, pow10(-e));
  return neg ? Rational(-q) : q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s, text);
  Rational num = parse_decimal(trim(s.substr(0, slash)), text);
  Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
  if (den == 0) throw Error(ErrorCode::InvalidParams, "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidParams, "non-finite value has no rational form");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, 0.5 <= |m| < 1
  constexpr int kBits = std::numeric_limits<double>::digits;
  auto mant = static_cast<long long>(std::ldexp(m, kBits));
  exp -= kBits;
  cpp_int num = mant;
  if (exp >= 0) return Rational(num << exp);
  cpp_int den = 1;
  den <<= -exp;
  return Rational(num, den);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  const auto& num = boost::multiprecision::numerator(q);
  const auto& den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

}  // namespace bhold
