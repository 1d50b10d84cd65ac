#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "bhold/barrier.hpp"

namespace bhold {

using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using ScalarField = std::function<double(const Vec&)>;

/// Bounded convex domain: a convex polygon in the plane or a ball in R^n.
class ConvexDomain {
 public:
  enum class Shape { polygon2d, ball };

  /// Vertices in counter-clockwise order (clockwise input is reversed).
  /// Throws NonConvexDomain for reflex, repeated or collinear-only vertex lists.
  static ConvexDomain polygon(std::vector<Vec2> vertices);
  static ConvexDomain ball(const Vec& center, double radius);

  Shape shape() const { return shape_; }
  int dim() const { return shape_ == Shape::ball ? static_cast<int>(center_.size()) : 2; }
  double diam() const { return diam_; }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const Vec& center() const { return center_; }
  double radius() const { return radius_; }
  Vec centroid() const;

  /// Positive inside, zero on the boundary, negative outside (Euclidean distance).
  double signed_distance(const Vec& x) const;
  bool contains(const Vec& x, double tol = 0.0) const { return signed_distance(x) >= -tol; }
  Vec closest_boundary_point(const Vec& x) const;
  /// Distance from a point of the closed domain to the boundary along a unit direction.
  double ray_exit(const Vec& x, const Vec& unit_dir) const;
  /// Unit inward normal at a boundary point; the bisector of the two edge normals at a vertex.
  Vec inward_normal(const Vec& P) const;
  bool on_boundary(const Vec& P, double tol = 1e-9) const;

  /// N points along the boundary of a 2-D domain. Polygons: arc-length spacing
  /// with every vertex included. Disks: equal angles starting at the bottom point.
  std::vector<Vec2> boundary_samples(int count) const;
  /// Boundary point at arc-length fraction s in [0,1) of the 2-D boundary, same
  /// parametrization as boundary_samples.
  Vec2 boundary_point(double s) const;

  /// Copy scaled about the centroid so that diam < target.
  ConvexDomain normalized(double target = 0.99) const;

 private:
  Shape shape_ = Shape::ball;
  std::vector<Vec2> vertices_;
  std::vector<Vec2> edge_normals_;  // outward unit normals
  std::vector<double> edge_offsets_;
  std::vector<double> cumulative_;  // arc length at each vertex
  Vec center_;
  double radius_ = 0.0;
  double diam_ = 0.0;
};

/// Rigid frame with a boundary point at the origin and the last axis along the
/// inward normal. Rows of R are the local axes expressed in global coordinates.
struct Frame {
  Vec origin;
  Eigen::MatrixXd R;

  Vec to_local(const Vec& x) const { return R * (x - origin); }
  Vec to_global(const Vec& y) const { return origin + R.transpose() * y; }
  static Frame at(const Vec& P, const Vec& inward_normal);
};

enum class CertKind { exterior, interior };

struct BoundaryTypeCert {
  Vec P;
  CertKind kind = CertKind::exterior;
  double a = 2.0;
  double eta = 0.0;
  double eps = 0.0;    ///< interior only
  double width = 0.0;  ///< interior only: admissible |x'| width of the cup region
  double diam = 0.0;
  Frame frame;
  int validated_samples = 0;
};

struct ClassifyOptions {
  int samples = 2048;
  int validation_factor = 4;
  /// Interior kind: eta * eps^a. Defaults to the length of the inward normal chord.
  std::optional<double> lid_constant;
  double eta_max = 1e12;
};

BoundaryTypeCert classify_boundary_point(const ConvexDomain& dom, const Vec& P, CertKind kind,
                                         double a, const ClassifyOptions& opts = {});

/// Exterior: max{1/eta, diam} for a in [1,2]. Interior: min{1/eta, eta eps^2 / 4} for a >= 2.
double sphere_condition_radius(const BoundaryTypeCert& cert);

struct SphereCheck {
  double radius = 0.0;
  int samples = 0;
  int violations = 0;
};

/// Samples the ball inclusion behind sphere_condition_radius.
SphereCheck validate_sphere_condition(const ConvexDomain& dom, const BoundaryTypeCert& cert,
                                      int samples, std::uint64_t seed);

enum class Region { V, Vprime, V0, Vtilde };

std::optional<Region> parse_region(std::string_view name);

/// Point given in the certificate frame (last coordinate x_n).
bool region_membership(const Vec& x_local, Region region, const BoundaryTypeCert& cert);

/// Interval for dist(x, boundary) at a point of V (local coordinates).
Interval dist_bounds_V(const Vec& x_local, const BoundaryTypeCert& cert);

struct HalfRegionOptions {
  int chords = 256;
  int samples_per_chord = 1024;
  double unimodal_tol = 1e-9;
};

/// Union of the open segments (P, y_Q) where y_Q minimizes u along the chord P->Q.
class HalfRegion {
 public:
  struct Chord {
    Vec Q;
    Vec y;
    double length = 0.0;
    double t_star = 0.0;
  };

  HalfRegion(const ConvexDomain& dom, Vec P, ScalarField u, HalfRegionOptions opts);

  const Vec& anchor() const { return P_; }
  const std::vector<Chord>& chords() const { return chords_; }
  /// Chord P->Q for the boundary point Q; y_Q is the first minimizer from P.
  Chord chord_to(const Vec& Q) const;
  bool contains(const Vec& x) const;
  /// dist(P, y_Q) / dist(P, Q).
  double k_PQ(const Vec& Q) const;

 private:
  Chord chord_dir(const Vec& unit_dir) const;

  ConvexDomain dom_;
  Vec P_;
  ScalarField u_;
  HalfRegionOptions opts_;
  std::vector<Chord> chords_;
};

HalfRegion omega_half(const ConvexDomain& dom, const Vec& P, ScalarField u,
                      const HalfRegionOptions& opts = {});

/// Lower and upper bounds on k_PQ for upper-(mu,M) and lower-(nu,m) type functions.
std::pair<double, double> domain_ratio_bounds(double mu, double nu, double M, double m, double diam);

}  // namespace bhold
