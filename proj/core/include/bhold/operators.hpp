#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "bhold/barrier.hpp"
#include "bhold/envelope.hpp"
#include "bhold/params.hpp"

namespace bhold {

/// B * lambda_min^s * lambda_max^t. 0^s is 0 for s > 0 and 1 for s = 0.
double power_F(double lambda_min, double lambda_max, double B, double s, double t);
double power_F(const EigenSet& es, double B, double s, double t);

/// k-th elementary symmetric polynomial of the eigenvalues.
double sigma_k(const std::vector<double>& eigs, int k);

/// Operator handle acting on the full list of Hessian eigenvalues.
using Operator = std::function<double(const std::vector<double>&)>;

Operator power_operator(double B, double s, double t);
Operator sigma_k_operator(int k);
Operator monge_ampere_operator();

enum class RhsKind { upper_f3, lower_f3p };

/// Bounding right-hand side A dist^{beta-n-1} |z - phi|^{-alpha} (1 + |q - Dphi|^2)^{gamma/2},
/// phi being the convex envelope (upper_f3) or the concave one (lower_f3p).
struct RhsBound {
  RhsKind kind = RhsKind::upper_f3;
  StructureValues params;
  std::shared_ptr<const BoundaryEnvelope> envelope;
};

using DistFn = std::function<double(const Vec&)>;

double f_bound(const Vec& x, double z, const Vec& q, const RhsBound& rb, const DistFn& dist);

/// The same expression with the deviation z - phi and |q - Dphi|^2 supplied directly.
double f_bound_deviation(double dist, double deviation, double grad_dev_sq, const StructureValues& p);

/// F(eigenvalues of D^2 W) / f_bound at a point where z - phi = W and q - Dphi = DW.
double H_tilde(const BarrierEval& be, const EigenSet& es, const StructureValues& p, const Operator& F,
               double dist);
double H_tilde(const BarrierEval& be, const EigenSet& es, const RhsBound& rb, const Operator& F,
               const Vec& x, const DistFn& dist);

}  // namespace bhold
