#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "bhold/barrier.hpp"
#include "bhold/params.hpp"

namespace bhold {

enum class Regime { step11, step12, supersolution, a_in_1_2 };
const char* to_string(Regime r) noexcept;
std::optional<Regime> parse_regime(std::string_view name);

/// Named constants of one table. Tilded constants are stored as "Ct<k>".
struct ConstantSet {
  Regime regime = Regime::step11;
  double delta = 0.0;  ///< delta actually used after shrinking
  int delta_halvings = 0;
  std::map<std::string, double> values;
  /// Coefficients of the W_rr and W_nn interval rows (not table entries but required positive).
  std::map<std::string, double> rows;
  double at(const std::string& name) const;
  bool positive(const std::string& name) const { return at(name) > 0.0; }
  bool all_positive() const;
  std::vector<std::string> non_positive() const;
};

struct ConstantInputs {
  double a = 2.0;
  double b = 2.0;
  double delta = 0.1;
  double eta = 1.0;        ///< interior eta of V (supersolution side)
  double eta_prime = 1.0;  ///< interior eta of V' (subsolution side)
  double eps = 0.5;
  double diam = 1.0;
  double rho = 1.0;        ///< |W| >= rho dist(x, S) on V
  double rho_prime = 1.0;  ///< the same on V'
  StructureValues p;
};

/// Subsolution constants for a >= 2: step11 when b > 1, step12 when 0 < b <= 1.
/// strict: throw NonPositiveConstant when a required constant stays <= 0 after
/// up to 20 halvings of delta; otherwise just report.
ConstantSet table1_constants(const ConstantInputs& in, bool strict = true);
/// Supersolution constants for a >= 2.
ConstantSet table2_constants(const ConstantInputs& in, bool strict = true);
/// Constants that change for 1 <= a < 2 (b > 1, ab > 2 for positivity).
ConstantSet table3_constants(const ConstantInputs& in, bool strict = true);

/// 0.95 times the largest rho with |W| >= rho dist(x, S) on a grid x grid sample of V.
double estimate_rho(const BarrierParams& bp, double eta, double eps, int grid = 200);

struct SandwichReport {
  Regime regime = Regime::step11;
  int points = 0;
  double decomposition_error = 0.0;  ///< max relative |I1+I2+I3 - det| / |det|
  double margin_det_lower = 0.0;     ///< min of det / (C1 |W|^{2-b-ab} xi^-2) - 1
  double margin_det_upper = 0.0;     ///< min of 1 - det / (C2 ...)
  double margin_trace = 0.0;         ///< min of 1 - (W_rr + W_nn) / (C3 ...)
  double margin_Wrr = 0.0;           ///< min over both ends of the W_rr row, relative
  double margin_Wnn = 0.0;
  std::map<std::string, double> constants;
  bool decomposition_ok = false;
  bool sandwich_ok = false;
  bool rows_ok = false;
  bool passed() const { return decomposition_ok && sandwich_ok && rows_ok; }
};

/// Evaluates the appendix decomposition, the C1/C2/C3 sandwich and the W_rr, W_nn
/// rows on an nr x nn grid of {r^2 <= delta (x_n/xi)^{2/a}, 0 < x_n <= diam}.
SandwichReport appendix_sandwich_check(const BarrierParams& bp, const StructureValues& p, Regime regime,
                                       int grid = 50, double diam = 1.0);

void write_constants_csv(const ConstantSet& cs, std::ostream& os);

}  // namespace bhold
