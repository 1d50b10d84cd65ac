#include "bhold/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bhold/error.hpp"

namespace bhold {

double BarrierEval::radial_ratio() const {
  if (W_r_over_r) return *W_r_over_r;
  if (r == 0.0) return W_rr;
  return W_r / r;
}

std::optional<double> barrier_value(double r, double x_n, const BarrierParams& bp) {
  if (x_n <= 0.0) return std::nullopt;
  const double g = std::pow(x_n / bp.xi, 2.0 / bp.a) - r * r;
  if (g <= 0.0) return std::nullopt;
  return -std::pow(g, 1.0 / bp.b);
}

BarrierEval eval_barrier(double r, double x_n, const BarrierParams& bp) {
  if (!(x_n > 0.0)) throw Error(ErrorCode::NonPositiveXn, "x_n must be positive");
  const double a = bp.a, b = bp.b, xi = bp.xi;
  const double y = x_n / xi;
  const double g = std::pow(y, 2.0 / a) - r * r;
  if (!(g > 0.0)) throw Error(ErrorCode::OutsideSupport, "(x_n/xi)^{2/a} <= r^2");

  const double absW = std::pow(g, 1.0 / b);
  const double p1 = std::pow(absW, 1.0 - b);        // |W|^{1-b}
  const double p2 = std::pow(absW, 1.0 - 2.0 * b);  // |W|^{1-2b}
  const double y1 = std::pow(y, 2.0 / a - 1.0);
  const double y2 = std::pow(y, 2.0 / a - 2.0);
  const double y4 = std::pow(y, 4.0 / a - 2.0);

  BarrierEval e;
  e.r = r;
  e.x_n = x_n;
  e.W = -absW;
  e.W_r = 2.0 / b * p1 * r;
  e.W_n = -2.0 / (a * b) * p1 * y1 / xi;
  e.W_rr = 2.0 / b * p1 - 4.0 * (1.0 - b) / (b * b) * p2 * r * r;
  e.W_nn = -2.0 * (2.0 - a) / (a * a * b) * p1 * y2 / (xi * xi)
           - 4.0 * (1.0 - b) / (a * a * b * b) * p2 * y4 / (xi * xi);
  e.W_rn = 4.0 * (1.0 - b) / (a * b * b) * p2 * r * y1 / xi;
  e.W_r_over_r = 2.0 / b * p1;
  return e;
}

std::vector<double> EigenSet::values() const {
  std::vector<double> v;
  v.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n - 2; ++i) v.push_back(repeated);
  v.push_back(lambda_minus);
  v.push_back(lambda_plus);
  std::sort(v.begin(), v.end());
  return v;
}

EigenSet hessian_eigenvalues_unchecked(const BarrierEval& be, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidParams, "dimension must be >= 2");
  EigenSet es;
  es.n = n;
  es.repeated = be.radial_ratio();
  const double tr = be.W_rr + be.W_nn;
  const double det = be.W_rr * be.W_nn - be.W_rn * be.W_rn;
  const double diff = be.W_rr - be.W_nn;
  const double root = std::sqrt(diff * diff + 4.0 * be.W_rn * be.W_rn);
  // Larger-magnitude root first, the other from the product to avoid cancellation.
  if (tr >= 0.0) {
    es.lambda_plus = 0.5 * (tr + root);
    es.lambda_minus = es.lambda_plus != 0.0 ? det / es.lambda_plus : 0.5 * (tr - root);
  } else {
    es.lambda_minus = 0.5 * (tr - root);
    es.lambda_plus = es.lambda_minus != 0.0 ? det / es.lambda_minus : 0.5 * (tr + root);
  }
  es.lambda_min = es.lambda_minus;
  es.lambda_max = es.lambda_plus;
  if (n > 2) {
    es.lambda_min = std::min(es.lambda_min, es.repeated);
    es.lambda_max = std::max(es.lambda_max, es.repeated);
  }
  return es;
}

EigenSet hessian_eigenvalues(const BarrierEval& be, int n) {
  if (!(be.W_rr > 0.0))
    throw Error(ErrorCode::LemmaHypothesisViolated, "W_rr > 0 fails");
  if (!(be.W_nn > 0.0))
    throw Error(ErrorCode::LemmaHypothesisViolated, "W_nn > 0 fails");
  if (!(be.W_rr * be.W_nn - be.W_rn * be.W_rn > 0.0))
    throw Error(ErrorCode::LemmaHypothesisViolated, "W_rr W_nn - W_rn^2 > 0 fails");
  return hessian_eigenvalues_unchecked(be, n);
}

bool Interval::contains(double x, double rel) const {
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi), width()});
  const double slack = rel * scale;
  return x >= lo - slack && x <= hi + slack;
}

EigenBoundCheck eigen_bound_details(const EigenSet& es, const BarrierEval& be) {
  const double rr = be.W_rr, nn = be.W_nn;
  const double det2 = rr * nn - be.W_rn * be.W_rn;
  const double tr2 = rr + nn;
  const double q = be.radial_ratio();
  EigenBoundCheck c;
  c.lambda_minus_ok = Interval{det2 / tr2, std::min(rr, nn)}.contains(es.lambda_minus);
  c.lambda_plus_ok = Interval{std::max(rr, nn), tr2}.contains(es.lambda_plus);
  // W_r/r is an eigenvalue only when n > 2, so the upper end applies only then.
  const double min_hi = es.n > 2 ? q : std::min(rr, nn);
  const double min_lo = es.n > 2 ? std::min(q, det2 / tr2) : det2 / tr2;
  c.lambda_min_ok = Interval{min_lo, min_hi}.contains(es.lambda_min);
  c.lambda_max_ok = Interval{nn, (es.n - 2) * q + tr2}.contains(es.lambda_max);
  return c;
}

bool eigen_bound_check(const EigenSet& es, const BarrierEval& be) {
  return eigen_bound_details(es, be).ok();
}

std::optional<MagnitudeRegion> parse_magnitude_region(std::string_view name) {
  if (name == "assumption7") return MagnitudeRegion::assumption7;
  if (name == "regionV" || name == "V") return MagnitudeRegion::regionV;
  return std::nullopt;
}

Interval barrier_magnitude_bounds(double x_n, const BarrierParams& bp, MagnitudeRegion region) {
  const double top = std::pow(x_n / bp.xi, 2.0 / (bp.a * bp.b));
  switch (region) {
    case MagnitudeRegion::assumption7:
      return {std::pow(1.0 - bp.delta, 1.0 / bp.b) * top, top};
    case MagnitudeRegion::regionV:
      return {std::pow(1.0 - std::pow(0.25, 2.0 / bp.a), 1.0 / bp.b) * top, top};
  }
  throw Error(ErrorCode::UnknownRegion, "unknown region");
}

Interval barrier_magnitude_bounds(double x_n, const BarrierParams& bp, std::string_view region) {
  auto r = parse_magnitude_region(region);
  if (!r) throw Error(ErrorCode::UnknownRegion, "unknown region '" + std::string(region) + "'");
  return barrier_magnitude_bounds(x_n, bp, *r);
}

}  // namespace bhold
