#include "bhold/params.hpp"

#include <cmath>
#include <string>

#include "bhold/error.hpp"

namespace bhold {

StructureValues StructureParams::values() const {
  return {to_double(A), to_double(alpha), to_double(beta), to_double(gamma),
          to_double(B), to_double(s),     to_double(t),    n};
}

void StructureParams::validate() const {
  if (n < 2) throw Error(ErrorCode::InvalidParams, "dimension n must be >= 2");
  if (beta < Rational(n + 1) + gamma)
    throw Error(ErrorCode::InvalidParams, "beta must be >= n+1+gamma");
  if (B <= 0) throw Error(ErrorCode::InvalidParams, "B must be positive");
  if (s < 0) throw Error(ErrorCode::InvalidParams, "s must be nonnegative");
  if (t < 0) throw Error(ErrorCode::InvalidParams, "t must be nonnegative");
  if (A < 0) throw Error(ErrorCode::InvalidParams, "A must be nonnegative");
}

const char* to_string(Branch b) noexcept {
  return b == Branch::formula ? "formula" : "saturated_one";
}

ExponentResult mu_exponent(const Rational& a, const StructureParams& p) {
  p.validate();
  if (a < 1) throw Error(ErrorCode::InvalidParams, "convexity parameter a must be >= 1");
  const Rational n(p.n);
  const Rational threshold = p.alpha + n + p.s - p.t + 1 - 2 * p.s / a;
  ExponentResult res;
  res.a_used = a;
  if (p.beta < threshold) {
    const Rational D = p.alpha - p.gamma + p.s + p.t;
    if (D == 0) throw Error(ErrorCode::DegenerateDenominator, "alpha-gamma+s+t = 0");
    res.mu = (p.beta - p.gamma + 2 * p.t - n - 1) / D + 2 * p.s / (a * D);
    res.branch = Branch::formula;
    if (res.mu <= 0)
      throw Error(ErrorCode::InvalidParams, "exponent vanishes (beta=n+1+gamma with s=t=0)");
  } else {
    res.mu = 1;
    res.branch = Branch::saturated_one;
  }
  res.mu_value = to_double(res.mu);
  return res;
}

ExponentResult mu_exponent(double a, const StructureParams& p) {
  return mu_exponent(rational_from_double(a), p);
}

bool BInterval::contains(const Rational& b) const {
  if (lower_open ? b <= lower : b < lower) return false;
  if (upper && (upper_open ? b >= *upper : b > *upper)) return false;
  return true;
}

bool BInterval::contains(double b) const { return contains(rational_from_double(b)); }

BInterval admissible_b_interval(const Rational& a, const StructureParams& p, Side side) {
  p.validate();
  if (a < 1) throw Error(ErrorCode::InvalidParams, "convexity parameter a must be >= 1");
  const Rational n(p.n);
  const Rational D = p.alpha - p.gamma + p.s + p.t;
  const Rational E = a * (p.beta - p.gamma - n - 1 + 2 * p.t) + 2 * p.s;
  if (E == 0) throw Error(ErrorCode::DegenerateDenominator, "a(beta-gamma-n-1+2t)+2s = 0");
  BInterval out;
  out.b0 = 2 * D / E;
  if (side == Side::subsolution) {
    out.lower = out.b0;
    if (p.s != 0) out.upper = D / p.s;
    if (out.lower <= 0 || (out.upper && *out.upper < out.lower))
      throw Error(ErrorCode::EmptyInterval, "subsolution b-interval is empty");
  } else {
    out.lower = 0;
    out.lower_open = true;
    out.upper = out.b0;
    if (out.b0 <= 0) throw Error(ErrorCode::EmptyInterval, "supersolution b-interval is empty");
  }
  return out;
}

BInterval admissible_b_interval(double a, const StructureParams& p, Side side) {
  return admissible_b_interval(rational_from_double(a), p, side);
}

MuCheck mu_equals_two_over_ab(const Rational& a, const Rational& b0, const StructureParams& p) {
  MuCheck out;
  const ExponentResult e = mu_exponent(a, p);
  out.mu = e.mu;
  if (e.branch != Branch::formula || b0 <= 0) return out;
  out.applicable = true;
  out.two_over_ab = 2 / (a * b0);
  const double lhs = to_double(out.mu);
  const double rhs = to_double(out.two_over_ab);
  out.equal = out.mu == out.two_over_ab || std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs);
  return out;
}

SignConditions sign_conditions(double a, double b, const StructureValues& p) {
  const double core = p.alpha - p.gamma + (1 - b) * p.s + (1 - a * b) * p.t;
  const double k = 2.0 / (a * b);
  return {p.n + 1 - p.beta + p.gamma + k * core, -2 * p.t - k * core};
}

}  // namespace bhold
