#pragma once

#include <optional>

#include "bhold/rational.hpp"

namespace bhold {

/// Double-precision view of StructureParams, used by the numeric modules.
struct StructureValues {
  double A = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double B = 1.0;
  double s = 0.0;
  double t = 0.0;
  int n = 2;
};

/// Exponents and amplitudes of the structure conditions on f and F.
/// Stored exactly so that exponent identities can be asserted without rounding.
struct StructureParams {
  Rational A{1};
  Rational alpha{0};
  Rational beta{0};
  Rational gamma{0};
  Rational B{1};
  Rational s{0};
  Rational t{0};
  int n = 2;

  StructureValues values() const;

  /// Throws InvalidParams when beta < n+1+gamma, B <= 0, s < 0, t < 0, A < 0 or n < 2.
  void validate() const;
};

enum class Branch { formula, saturated_one };

const char* to_string(Branch b) noexcept;

struct ExponentResult {
  Rational mu;
  double mu_value = 0.0;
  Branch branch = Branch::formula;
  Rational a_used;
};

/// Hölder exponent as a function of the convexity parameter a >= 1.
ExponentResult mu_exponent(const Rational& a, const StructureParams& p);
ExponentResult mu_exponent(double a, const StructureParams& p);

enum class Side { subsolution, supersolution };

/// Interval of admissible barrier exponents b. A missing upper bound means +inf.
struct BInterval {
  Rational lower;
  bool lower_open = false;
  std::optional<Rational> upper;
  bool upper_open = false;
  Rational b0;

  bool contains(const Rational& b) const;
  bool contains(double b) const;
};

BInterval admissible_b_interval(const Rational& a, const StructureParams& p, Side side);
BInterval admissible_b_interval(double a, const StructureParams& p, Side side);

struct MuCheck {
  bool applicable = false;  ///< false on the saturated branch
  bool equal = false;
  Rational mu;
  Rational two_over_ab;
};

/// Checks mu(a) == 2/(a*b0) to 1e-12 relative. Not applicable on the saturated branch.
MuCheck mu_equals_two_over_ab(const Rational& a, const Rational& b0, const StructureParams& p);

/// Sign of the two exponent conditions that pin the subsolution b-range:
/// cond1 = n+1-beta+gamma + (2/(ab))(alpha-gamma+(1-b)s+(1-ab)t),
/// cond2 = -2t - (2/(ab))(alpha-gamma+(1-b)s+(1-ab)t).
struct SignConditions {
  double cond1 = 0.0;
  double cond2 = 0.0;
};

SignConditions sign_conditions(double a, double b, const StructureValues& p);

}  // namespace bhold
