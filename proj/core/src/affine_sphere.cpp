#include "bhold/affine_sphere.hpp"

#include <cmath>

#include "bhold/error.hpp"

namespace bhold::affine_sphere {

ConvexDomain domain(int n) {
  Vec c = Vec::Zero(n);
  c(n - 1) = 0.5;
  return ConvexDomain::ball(c, 0.5);
}

StructureParams params(int n) {
  StructureParams p;
  p.n = n;
  p.A = 1;
  p.alpha = n + 2;
  p.beta = n + 1;
  p.gamma = 0;
  p.B = 1;
  p.s = n - 1;
  p.t = 1;
  return p;
}

double boundary_data(const Vec& x) { return -std::sqrt(std::max(0.0, x(x.size() - 1))); }

namespace {
double g_of(const Vec& x) {
  const auto n = x.size();
  const double y = x(n - 1) - 1.0;
  return 1.0 - x.head(n - 1).squaredNorm() - y * y;
}
}  // namespace

double exact(const Vec& x) { return -std::sqrt(std::max(0.0, g_of(x))); }

Vec exact_gradient(const Vec& x) {
  const double g = g_of(x);
  if (!(g > 0.0)) throw Error(ErrorCode::OutsideSupport, "gradient undefined on the unit sphere");
  Vec d = x;
  d(x.size() - 1) -= 1.0;
  return d / std::sqrt(g);
}

BarrierEval exact_jet(double r, double x_n) {
  const double y = x_n - 1.0;
  const double g = 1.0 - r * r - y * y;
  if (!(g > 0.0)) throw Error(ErrorCode::OutsideSupport, "outside the unit sphere");
  const double sg = std::sqrt(g);
  const double g32 = g * sg;
  BarrierEval e;
  e.r = r;
  e.x_n = x_n;
  e.W = -sg;
  e.W_r = r / sg;
  e.W_n = y / sg;
  e.W_rr = 1.0 / sg + r * r / g32;
  e.W_nn = 1.0 / sg + y * y / g32;
  e.W_rn = r * y / g32;
  e.W_r_over_r = 1.0 / sg;
  return e;
}

double rhs(double z, int n) { return std::pow(std::abs(z), -(n + 2.0)); }

}  // namespace bhold::affine_sphere
