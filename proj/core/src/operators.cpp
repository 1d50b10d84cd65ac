#include "bhold/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bhold/error.hpp"

namespace bhold {
namespace {

double pow0(double base, double e) {
  if (e == 0.0) return 1.0;
  if (base == 0.0) return e > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::pow(base, e);
}

bool is_integer(double v) { return std::floor(v) == v; }

}  // namespace

double power_F(double lambda_min, double lambda_max, double B, double s, double t) {
  if (lambda_min < 0.0 && s != 0.0 && !is_integer(s))
    throw Error(ErrorCode::NegativeEigenvalue, "lambda_min < 0 with non-integer s");
  if (lambda_max < 0.0 && t != 0.0 && !is_integer(t))
    throw Error(ErrorCode::NegativeEigenvalue, "lambda_max < 0 with non-integer t");
  return B * pow0(lambda_min, s) * pow0(lambda_max, t);
}

double power_F(const EigenSet& es, double B, double s, double t) {
  return power_F(es.lambda_min, es.lambda_max, B, s, t);
}

double sigma_k(const std::vector<double>& eigs, int k) {
  const int n = static_cast<int>(eigs.size());
  if (k < 1 || k > n) throw Error(ErrorCode::KOutOfRange, "k must lie in 1..n");
  // e[j] holds sigma_j of the prefix processed so far.
  std::vector<double> e(static_cast<size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (double l : eigs)
    for (int j = k; j >= 1; --j) e[static_cast<size_t>(j)] += l * e[static_cast<size_t>(j) - 1];
  return e[static_cast<size_t>(k)];
}

Operator power_operator(double B, double s, double t) {
  return [B, s, t](const std::vector<double>& eigs) {
    const auto [lo, hi] = std::minmax_element(eigs.begin(), eigs.end());
    return power_F(*lo, *hi, B, s, t);
  };
}

Operator sigma_k_operator(int k) {
  if (k < 1) throw Error(ErrorCode::KOutOfRange, "k must be >= 1");
  return [k](const std::vector<double>& eigs) { return sigma_k(eigs, k); };
}

Operator monge_ampere_operator() {
  return [](const std::vector<double>& eigs) {
    return sigma_k(eigs, static_cast<int>(eigs.size()));
  };
}

double f_bound_deviation(double dist, double deviation, double grad_dev_sq, const StructureValues& p) {
  const double dexp = p.beta - p.n - 1.0;
  if (dist <= 0.0 && dexp < 0.0) throw Error(ErrorCode::BoundaryPoint, "dist = 0 with beta < n+1");
  if (deviation == 0.0 && p.alpha > 0.0)
    throw Error(ErrorCode::ZeroDenominator, "z equals the envelope value");
  return p.A * pow0(dist, dexp) * pow0(std::abs(deviation), -p.alpha) *
         pow0(1.0 + grad_dev_sq, p.gamma / 2.0);
}

double f_bound(const Vec& x, double z, const Vec& q, const RhsBound& rb, const DistFn& dist) {
  double phi = 0.0;
  Vec dphi = Vec::Zero(x.size());
  if (rb.envelope) {
    auto [v, g] = rb.envelope->evaluate(x);
    phi = v;
    dphi = g;
  }
  return f_bound_deviation(dist(x), z - phi, (q - dphi).squaredNorm(), rb.params);
}

double H_tilde(const BarrierEval& be, const EigenSet& es, const StructureValues& p, const Operator& F,
               double dist) {
  const double num = F(es.values());
  const double den = f_bound_deviation(dist, be.W, be.grad_norm_sq(), p);
  if (den == 0.0) throw Error(ErrorCode::ZeroDenominator, "f_bound vanishes");
  if (std::isfinite(den)) return num / den;
  // Overflowing bound: redo the quotient in logarithms.
  const double logden = std::log(p.A) + (p.beta - p.n - 1.0) * std::log(dist) -
                        p.alpha * std::log(std::abs(be.W)) + 0.5 * p.gamma * std::log1p(be.grad_norm_sq());
  return num > 0.0 ? std::exp(std::log(num) - logden) : num * std::exp(-logden);
}

double H_tilde(const BarrierEval& be, const EigenSet& es, const RhsBound& rb, const Operator& F,
               const Vec& x, const DistFn& dist) {
  return H_tilde(be, es, rb.params, F, dist(x));
}

}  // namespace bhold
