#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

#include "bhold/envelope.hpp"
#include "bhold/geometry.hpp"

namespace bhold {

using BoundaryData = std::function<double(const Vec2&)>;

/// Right-hand side f(x, z, q) of det D^2 u = f, non-decreasing in z.
struct MaRhs {
  std::function<double(const Vec2&, double, const Vec2&)> f;
  /// Optional derivative in z; a difference quotient is used when empty.
  std::function<double(const Vec2&, double, const Vec2&)> df_dz;
};

/// f = c.
MaRhs constant_rhs(double c);
/// f = A * max(anchor(x) - z, eps)^{-alpha}, the one-sided clamp keeping f monotone in z.
MaRhs singular_power_rhs(double A, double alpha, BoundaryData anchor, double eps);

enum class Scheme {
  orthogonal_pairs,  ///< min over orthogonal direction pairs of products of second differences
  superbase,         ///< min over lattice superbases of the exact 2x2 determinant identity
};

struct SolveConfig {
  double h = 1.0 / 64.0;
  int directions = 8;  ///< 4, 8 or 16
  Scheme scheme = Scheme::superbase;
  double eps_u = 1e-6;
  double damping = 1.0;  ///< initial Newton step length
  int max_iterations = 200;
  double tolerance = 1e-6;  ///< max-norm residual
  double boundary_tau = 0.05;  ///< nodes closer than tau*h to the boundary carry Dirichlet values
  int levels = 3;              ///< nested iteration over h * 2^k, k = levels-1..0
  double initial_dip = 1.0;
  int envelope_samples = 1024;
  void validate() const;
};

enum class NodeKind : std::uint8_t { outside = 0, interior = 1, dirichlet = 2 };

/// Values on the lattice (ox + i h, oy + j h), x index fastest.
struct GridField {
  double h = 0.0;
  int nx = 0, ny = 0;
  double ox = 0.0, oy = 0.0;
  std::vector<double> u;
  std::vector<std::uint8_t> mask;  ///< NodeKind values
  std::shared_ptr<const ConvexDomain> domain;
  BoundaryData phi;

  size_t index(int i, int j) const { return static_cast<size_t>(j) * static_cast<size_t>(nx) + static_cast<size_t>(i); }
  Vec2 node(int i, int j) const { return Vec2(ox + i * h, oy + j * h); }
  NodeKind kind(int i, int j) const { return static_cast<NodeKind>(mask[index(i, j)]); }
  int interior_count() const;
  /// Bilinear interpolation; throws OutsideMask unless all four cell corners are inside.
  double interpolate(const Vec2& x) const;
};

struct SolveStats {
  struct Level {
    double h = 0.0;
    int unknowns = 0;
    int newton_iterations = 0;
    int gs_sweeps = 0;
    double residual = 0.0;
    bool converged = false;
  };
  std::vector<Level> levels;
};

/// Empty field with the mask and Dirichlet node values filled in.
GridField make_grid(const ConvexDomain& dom, const BoundaryData& phi, double h, double tau = 0.05);
/// make_grid with interior nodes set from g.
GridField sample_field(const ConvexDomain& dom, const BoundaryData& phi,
                       const std::function<double(const Vec2&)>& g, double h, double tau = 0.05);

GridField solve_dirichlet_ma(const ConvexDomain& dom, const MaRhs& f, const BoundaryData& phi,
                             const SolveConfig& cfg, SolveStats* stats = nullptr);
GridField solve_dirichlet_ma(const ConvexDomain& dom, const MaRhs& f,
                             const std::vector<BoundarySample>& samples, const SolveConfig& cfg,
                             SolveStats* stats = nullptr);

/// max |scheme(u) - f(x, u, Du_h)| over interior nodes at distance >= min_dist from the boundary.
double residual(const GridField& field, const MaRhs& f, const SolveConfig& cfg, double min_dist = 0.0);

/// Piecewise-linear interpolation of boundary samples by angle about the domain centroid.
BoundaryData interpolate_boundary(const std::vector<BoundarySample>& samples, const ConvexDomain& dom);

/// Fitted exponent of |u(P + rho dir) - u(P)| against rho over the radii window.
double boundary_exponent(const GridField& field, const Vec2& P, const Vec2& dir,
                         const std::vector<double>& radii);

void write_field_csv(const GridField& field, std::ostream& os);
/// Little-endian: f64 h, i64 nx, i64 ny, f64 ox, f64 oy, nx*ny f64 values, nx*ny mask bytes.
void write_field_binary(const GridField& field, std::ostream& os);
GridField read_field_binary(std::istream& is);

}  // namespace bhold
