#pragma once

#include "bhold/barrier.hpp"
#include "bhold/geometry.hpp"
#include "bhold/params.hpp"

/// The hyperbolic affine sphere example: det D^2 u = |u|^{-(n+2)} on the ball
/// of radius 1/2 centred at e_n/2 with boundary data -sqrt(x_n). The exact
/// solution is U = -sqrt(1 - |x'|^2 - (x_n - 1)^2).
namespace bhold::affine_sphere {

ConvexDomain domain(int n = 2);

/// A = 1, alpha = n+2, beta = n+1, gamma = 0, B = 1, s = n-1, t = 1.
StructureParams params(int n = 2);

double boundary_data(const Vec& x);
double exact(const Vec& x);
Vec exact_gradient(const Vec& x);
/// Rotational jet of U in (r, x_n); W_r_over_r is set to -1/U.
BarrierEval exact_jet(double r, double x_n);
/// |z|^{-(n+2)}.
double rhs(double z, int n = 2);

}  // namespace bhold::affine_sphere
