#pragma once

#include <Eigen/Dense>

#include <functional>
#include <utility>
#include <vector>

#include "bhold/geometry.hpp"

namespace bhold {

enum class EnvelopeKind { convex_sup_affine, concave_inf_affine };

struct BoundarySample {
  Vec2 point;
  double value = 0.0;
};

/// Piecewise-affine envelope of boundary data: the lower convex hull (sup of
/// affine minorants) or the upper concave hull (inf of affine majorants) of
/// the lifted samples, evaluable anywhere in the domain.
class BoundaryEnvelope {
 public:
  /// phi(x) = g.x + c in any dimension; both kinds coincide.
  static BoundaryEnvelope affine(const Vec& g, double c, EnvelopeKind kind);
  static BoundaryEnvelope build(const std::vector<BoundarySample>& samples, const ConvexDomain& dom,
                                EnvelopeKind kind);

  EnvelopeKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const std::vector<BoundarySample>& samples() const { return samples_; }
  size_t facet_count() const { return planes_.size(); }

  double value(const Vec& x) const { return evaluate(x).first; }
  Vec gradient(const Vec& x) const { return evaluate(x).second; }
  /// Value and the gradient of the active facet. At facet boundaries the facet
  /// containing the query nudged toward the domain centroid is used.
  std::pair<double, Vec> evaluate(const Vec& x) const;

 private:
  struct Plane {
    double gx = 0.0, gy = 0.0, c = 0.0;
    double at(double x, double y) const { return gx * x + gy * y + c; }
  };
  struct Tri {
    Vec2 p0, p1, p2;
    int plane = 0;
  };

  EnvelopeKind kind_ = EnvelopeKind::convex_sup_affine;
  int dim_ = 2;
  std::vector<BoundarySample> samples_;
  Vec affine_g_;
  double affine_c_ = 0.0;
  bool is_affine_ = false;
  double sign_ = 1.0;  // -1 for concave: stored as a convex envelope of -phi
  std::vector<Plane> planes_;
  std::vector<Tri> tris_;
  Vec2 centroid_{0.0, 0.0};
  Vec2 lo_{0.0, 0.0}, hi_{0.0, 0.0};
  int grid_ = 1;
  std::vector<std::vector<int>> buckets_;
};

BoundaryEnvelope convex_envelope(const std::vector<BoundarySample>& samples, const ConvexDomain& dom);
BoundaryEnvelope concave_envelope(const std::vector<BoundarySample>& samples, const ConvexDomain& dom);

/// phi evaluated at boundary_samples(count).
std::vector<BoundarySample> sample_boundary(const ConvexDomain& dom,
                                            const std::function<double(const Vec2&)>& phi, int count);

}  // namespace bhold
