#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace bhold {

struct BarrierParams {
  double a = 2.0;
  double b = 2.0;
  double xi = 1.0;
  double delta = 0.1;
};

/// Value and second-order jet of a rotationally symmetric function w(r, x_n),
/// r = |x'|. Produced by eval_barrier for W, or filled by hand for other
/// functions (the exact affine-sphere solution, test fixtures).
struct BarrierEval {
  double W = 0.0;
  double W_r = 0.0;
  double W_n = 0.0;
  double W_rr = 0.0;
  double W_nn = 0.0;
  double W_rn = 0.0;
  double r = 0.0;
  double x_n = 0.0;
  /// Closed form of W_r/r when known; used instead of dividing (and at r = 0).
  std::optional<double> W_r_over_r;

  /// W_r/r, its stored closed form, or the limit W_rr at r = 0.
  double radial_ratio() const;
  double grad_norm_sq() const { return W_r * W_r + W_n * W_n; }
};

/// W = -((x_n/xi)^{2/a} - r^2)^{1/b} and its partial derivatives in closed form.
BarrierEval eval_barrier(double r, double x_n, const BarrierParams& bp);

/// W alone, or nullopt where (x_n/xi)^{2/a} <= r^2.
std::optional<double> barrier_value(double r, double x_n, const BarrierParams& bp);

struct EigenSet {
  int n = 2;
  double repeated = 0.0;  ///< W_r/r, multiplicity n-2
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;

  /// All n eigenvalues in ascending order.
  std::vector<double> values() const;
};

/// Spectrum of the n x n Hessian of a rotationally symmetric function.
/// Requires W_rr > 0, W_nn > 0 and W_rr W_nn - W_rn^2 > 0.
EigenSet hessian_eigenvalues(const BarrierEval& be, int n);

/// Same spectrum without the positivity hypotheses.
EigenSet hessian_eigenvalues_unchecked(const BarrierEval& be, int n);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  /// lo - slack <= x <= hi + slack with slack = rel * max(1, |lo|, |hi|, width).
  bool contains(double x, double rel = 1e-12) const;
};

struct EigenBoundCheck {
  bool lambda_minus_ok = false;
  bool lambda_plus_ok = false;
  bool lambda_min_ok = false;
  bool lambda_max_ok = false;
  bool ok() const { return lambda_minus_ok && lambda_plus_ok && lambda_min_ok && lambda_max_ok; }
};

/// The four interval memberships relating the spectrum to W_rr, W_nn, W_rn and W_r/r.
EigenBoundCheck eigen_bound_details(const EigenSet& es, const BarrierEval& be);
bool eigen_bound_check(const EigenSet& es, const BarrierEval& be);

enum class MagnitudeRegion { assumption7, regionV };

std::optional<MagnitudeRegion> parse_magnitude_region(std::string_view name);

/// Interval containing |W| at height x_n for points of the named region.
Interval barrier_magnitude_bounds(double x_n, const BarrierParams& bp, MagnitudeRegion region);
Interval barrier_magnitude_bounds(double x_n, const BarrierParams& bp, std::string_view region);

}  // namespace bhold
