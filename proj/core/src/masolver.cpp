#include "bhold/masolver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>

#include "bhold/error.hpp"
#include "bhold/verifier.hpp"

namespace bhold {

void SolveConfig::validate() const {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidParams, "h must be positive");
  if (directions != 4 && directions != 8 && directions != 16)
    throw Error(ErrorCode::InvalidParams, "directions must be 4, 8 or 16");
  if (!(eps_u > 0.0)) throw Error(ErrorCode::InvalidParams, "eps_u must be positive");
  if (!(damping > 0.0 && damping <= 1.0)) throw Error(ErrorCode::InvalidParams, "damping must lie in (0,1]");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidParams, "max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance must be positive");
  if (!(boundary_tau >= 0.0 && boundary_tau < 1.0)) throw Error(ErrorCode::InvalidParams, "boundary_tau must lie in [0,1)");
  if (levels < 1) throw Error(ErrorCode::InvalidParams, "levels must be >= 1");
}

MaRhs constant_rhs(double c) {
  MaRhs r;
  r.f = [c](const Vec2&, double, const Vec2&) { return c; };
  r.df_dz = [](const Vec2&, double, const Vec2&) { return 0.0; };
  return r;
}

MaRhs singular_power_rhs(double A, double alpha, BoundaryData anchor, double eps) {
  MaRhs r;
  r.f = [=](const Vec2& x, double z, const Vec2&) {
    const double d = std::max(anchor(x) - z, eps);
    return A * std::pow(d, -alpha);
  };
  r.df_dz = [=](const Vec2& x, double z, const Vec2&) {
    const double d = anchor(x) - z;
    if (d <= eps) return 0.0;
    return A * alpha * std::pow(d, -alpha - 1.0);
  };
  return r;
}

int GridField::interior_count() const {
  return static_cast<int>(std::count(mask.begin(), mask.end(), static_cast<std::uint8_t>(NodeKind::interior)));
}

double GridField::interpolate(const Vec2& x) const {
  const double fx = (x.x() - ox) / h, fy = (x.y() - oy) / h;
  int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
  if (i == nx - 1 && fx == i) --i;
  if (j == ny - 1 && fy == j) --j;
  if (i < 0 || j < 0 || i + 1 >= nx || j + 1 >= ny) throw Error(ErrorCode::OutsideMask, "point outside the grid");
  for (int dj = 0; dj < 2; ++dj)
    for (int di = 0; di < 2; ++di)
      if (kind(i + di, j + dj) == NodeKind::outside) throw Error(ErrorCode::OutsideMask, "cell leaves the domain");
  const double s = fx - i, t = fy - j;
  return (1 - s) * (1 - t) * u[index(i, j)] + s * (1 - t) * u[index(i + 1, j)] +
         (1 - s) * t * u[index(i, j + 1)] + s * t * u[index(i + 1, j + 1)];
}

namespace {

struct Bounds {
  Vec2 lo, hi;
};

Bounds domain_bounds(const ConvexDomain& dom) {
  if (dom.dim() != 2) throw Error(ErrorCode::InvalidParams, "the solver is two-dimensional");
  if (dom.shape() == ConvexDomain::Shape::ball) {
    const Vec2 c(dom.center()(0), dom.center()(1));
    const Vec2 r(dom.radius(), dom.radius());
    return {c - r, c + r};
  }
  Vec2 lo = dom.vertices().front(), hi = lo;
  for (const auto& v : dom.vertices()) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return {lo, hi};
}

Vec to_vec(const Vec2& p) {
  Vec v(2);
  v << p.x(), p.y();
  return v;
}

std::vector<Eigen::Vector2i> stencil_directions(int d) {
  std::vector<Eigen::Vector2i> v{{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  if (d >= 8) {
    for (Eigen::Vector2i w : {Eigen::Vector2i(2, 1), Eigen::Vector2i(1, 2), Eigen::Vector2i(2, -1), Eigen::Vector2i(1, -2)})
      v.push_back(w);
  }
  if (d >= 16) {
    for (Eigen::Vector2i w : {Eigen::Vector2i(3, 1), Eigen::Vector2i(1, 3), Eigen::Vector2i(3, -1), Eigen::Vector2i(1, -3),
                              Eigen::Vector2i(3, 2), Eigen::Vector2i(2, 3), Eigen::Vector2i(3, -2), Eigen::Vector2i(2, -3)})
      v.push_back(w);
  }
  return v;
}

// Direction combinations the operator minimizes over: orthogonal pairs, or
// triples e1, e2, e3 with e1 +- e2 +- e3 = 0 and |det(e1, e2)| = 1.
std::vector<std::array<int, 3>> stencil_groups(const std::vector<Eigen::Vector2i>& dirs, Scheme scheme) {
  std::vector<std::array<int, 3>> out;
  const int n = static_cast<int>(dirs.size());
  if (scheme == Scheme::orthogonal_pairs) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (dirs[i].dot(dirs[j]) == 0 && dirs[i].squaredNorm() == dirs[j].squaredNorm()) out.push_back({i, j, -1});
    return out;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int det = dirs[i].x() * dirs[j].y() - dirs[i].y() * dirs[j].x();
      if (std::abs(det) != 1) continue;
      for (int k = j + 1; k < n; ++k) {
        const Eigen::Vector2i s = dirs[i] + dirs[j], d = dirs[i] - dirs[j];
        if (dirs[k] == s || dirs[k] == -s || dirs[k] == d || dirs[k] == -d) out.push_back({i, j, k});
      }
    }
  return out;
}

struct Arm {
  int target = -1;  // unknown index, or -1 for a fixed value
  double len = 0.0;
  double value = 0.0;
};

// Discretization of one level: stencils of every interior node.
struct Problem {
  const ConvexDomain* dom = nullptr;
  const MaRhs* rhs = nullptr;
  Scheme scheme = Scheme::orthogonal_pairs;
  std::vector<Eigen::Vector2i> dirs;
  std::vector<double> dir_norm2;
  std::vector<std::array<int, 3>> groups;
  std::vector<size_t> node_of;  // unknown -> grid index
  std::vector<Vec2> pos;
  std::vector<Arm> arms;        // unknown * ndir * 2 (+ then -)
  int gx = 0, gy = 0;           // arm indices of the axis directions

  int ndir() const { return static_cast<int>(dirs.size()); }
  size_t unknowns() const { return node_of.size(); }
  const Arm& arm(size_t k, int d, int side) const {
    return arms[(k * static_cast<size_t>(ndir()) + static_cast<size_t>(d)) * 2 + static_cast<size_t>(side)];
  }
};

Problem build_problem(const GridField& g, const ConvexDomain& dom, const MaRhs& rhs, const SolveConfig& cfg,
                      std::vector<int>& unknown_of) {
  Problem pb;
  pb.dom = &dom;
  pb.rhs = &rhs;
  pb.scheme = cfg.scheme;
  pb.dirs = stencil_directions(cfg.directions);
  for (const auto& d : pb.dirs) pb.dir_norm2.push_back(static_cast<double>(d.squaredNorm()));
  pb.groups = stencil_groups(pb.dirs, cfg.scheme);
  pb.gx = 0;
  pb.gy = 1;
  unknown_of.assign(g.u.size(), -1);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (g.kind(i, j) == NodeKind::interior) {
        unknown_of[g.index(i, j)] = static_cast<int>(pb.node_of.size());
        pb.node_of.push_back(g.index(i, j));
        pb.pos.push_back(g.node(i, j));
      }
  pb.arms.resize(pb.unknowns() * pb.dirs.size() * 2);
  for (size_t k = 0; k < pb.unknowns(); ++k) {
    const int i = static_cast<int>(pb.node_of[k] % static_cast<size_t>(g.nx));
    const int j = static_cast<int>(pb.node_of[k] / static_cast<size_t>(g.nx));
    const Vec x = to_vec(pb.pos[k]);
    for (int d = 0; d < pb.ndir(); ++d) {
      for (int side = 0; side < 2; ++side) {
        const int sgn = side == 0 ? 1 : -1;
        const int ti = i + sgn * pb.dirs[d].x(), tj = j + sgn * pb.dirs[d].y();
        const double full = g.h * std::sqrt(pb.dir_norm2[d]);
        Arm a;
        if (ti >= 0 && tj >= 0 && ti < g.nx && tj < g.ny && g.kind(ti, tj) != NodeKind::outside) {
          a.len = full;
          a.target = unknown_of[g.index(ti, tj)];
          if (a.target < 0) a.value = g.u[g.index(ti, tj)];
        } else {
          Vec dir(2);
          dir << sgn * pb.dirs[d].x(), sgn * pb.dirs[d].y();
          dir.normalize();
          const double e = std::min(dom.ray_exit(x, dir), full);
          const Vec hit = x + e * dir;
          a.len = e;
          a.value = g.phi(Vec2(hit(0), hit(1)));
        }
        pb.arms[(k * pb.dirs.size() + static_cast<size_t>(d)) * 2 + static_cast<size_t>(side)] = a;
      }
    }
  }
  return pb;
}

double arm_value(const Arm& a, const std::vector<double>& x) {
  return a.target >= 0 ? x[static_cast<size_t>(a.target)] : a.value;
}

// Second difference along direction d at unknown k, scaled to <e, D^2u e>
// for the superbase scheme and to the unit-direction derivative otherwise.
struct SecondDiff {
  double value = 0.0;
  double c0 = 0.0, cp = 0.0, cm = 0.0;  // derivatives in u0, u+, u-
};

SecondDiff second_diff(const Problem& pb, size_t k, int d, const std::vector<double>& x) {
  const Arm& p = pb.arm(k, d, 0);
  const Arm& m = pb.arm(k, d, 1);
  const double u0 = x[k];
  const double scale = pb.scheme == Scheme::superbase ? pb.dir_norm2[static_cast<size_t>(d)] : 1.0;
  const double w = 2.0 / (p.len + m.len) * scale;
  SecondDiff s;
  s.cp = w / p.len;
  s.cm = w / m.len;
  s.c0 = -(s.cp + s.cm);
  s.value = s.cp * arm_value(p, x) + s.cm * arm_value(m, x) + s.c0 * u0;
  return s;
}

Vec2 centered_gradient(const Problem& pb, size_t k, const std::vector<double>& x) {
  Vec2 g;
  for (int axis = 0; axis < 2; ++axis) {
    const int d = axis == 0 ? pb.gx : pb.gy;
    const Arm& p = pb.arm(k, d, 0);
    const Arm& m = pb.arm(k, d, 1);
    g(axis) = (arm_value(p, x) - arm_value(m, x)) / (p.len + m.len);
  }
  return g;
}

struct LocalOp {
  double T = 0.0;
  // Sensitivities of T to the second differences of the active group.
  std::array<int, 3> dirs{-1, -1, -1};
  std::array<double, 3> dT{0.0, 0.0, 0.0};
};

double pos(double v) { return v > 0.0 ? v : 0.0; }
double neg(double v) { return v < 0.0 ? v : 0.0; }

LocalOp local_operator(const Problem& pb, const std::vector<double>& D) {
  LocalOp best;
  best.T = std::numeric_limits<double>::infinity();
  for (const auto& grp : pb.groups) {
    LocalOp op;
    if (grp[2] < 0) {
      const double a = D[static_cast<size_t>(grp[0])], b = D[static_cast<size_t>(grp[1])];
      op.T = pos(a) * pos(b) + neg(a) + neg(b);
      op.dirs = {grp[0], grp[1], -1};
      op.dT[0] = a > 0.0 ? pos(b) : 1.0;
      op.dT[1] = b > 0.0 ? pos(a) : 1.0;
    } else {
      const double a = D[static_cast<size_t>(grp[0])], b = D[static_cast<size_t>(grp[1])], c = D[static_cast<size_t>(grp[2])];
      const double ap = pos(a), bp = pos(b), cp = pos(c);
      double h, ha, hb, hc;
      if (ap >= bp + cp) {
        h = bp * cp; ha = 0.0; hb = cp; hc = bp;
      } else if (bp >= ap + cp) {
        h = ap * cp; ha = cp; hb = 0.0; hc = ap;
      } else if (cp >= ap + bp) {
        h = ap * bp; ha = bp; hb = ap; hc = 0.0;
      } else {
        h = (2.0 * (ap * bp + bp * cp + cp * ap) - ap * ap - bp * bp - cp * cp) / 4.0;
        ha = (bp + cp - ap) / 2.0;
        hb = (ap + cp - bp) / 2.0;
        hc = (ap + bp - cp) / 2.0;
      }
      op.T = h + neg(a) + neg(b) + neg(c);
      op.dirs = {grp[0], grp[1], grp[2]};
      op.dT[0] = a > 0.0 ? ha : 1.0;
      op.dT[1] = b > 0.0 ? hb : 1.0;
      op.dT[2] = c > 0.0 ? hc : 1.0;
    }
    if (op.T < best.T) best = op;
  }
  return best;
}

double rhs_value(const Problem& pb, size_t k, double z, const Vec2& q) {
  const double v = pb.rhs->f(pb.pos[k], z, q);
  if (!std::isfinite(v)) throw Error(ErrorCode::SingularRhs, "right-hand side is not finite");
  return v;
}

double rhs_dz(const Problem& pb, size_t k, double z, const Vec2& q) {
  if (pb.rhs->df_dz) return pb.rhs->df_dz(pb.pos[k], z, q);
  const double dz = 1e-7 * std::max(1.0, std::abs(z));
  return (pb.rhs->f(pb.pos[k], z + dz, q) - pb.rhs->f(pb.pos[k], z - dz, q)) / (2.0 * dz);
}

double node_residual(const Problem& pb, size_t k, const std::vector<double>& x, std::vector<double>& D) {
  for (int d = 0; d < pb.ndir(); ++d) D[static_cast<size_t>(d)] = second_diff(pb, k, d, x).value;
  return local_operator(pb, D).T - rhs_value(pb, k, x[k], centered_gradient(pb, k, x));
}

double residual_norm(const Problem& pb, const std::vector<double>& x, std::vector<double>& R) {
  std::vector<double> D(pb.dirs.size());
  double m = 0.0;
  R.resize(pb.unknowns());
  for (size_t k = 0; k < pb.unknowns(); ++k) {
    R[k] = node_residual(pb, k, x, D);
    m = std::max(m, std::abs(R[k]));
  }
  return m;
}

bool newton_step(const Problem& pb, std::vector<double>& x, std::vector<double>& R, double& norm, double damping) {
  const size_t n = pb.unknowns();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n * 7);
  std::vector<double> D(pb.dirs.size());
  std::vector<SecondDiff> S(pb.dirs.size());
  for (size_t k = 0; k < n; ++k) {
    for (int d = 0; d < pb.ndir(); ++d) {
      S[static_cast<size_t>(d)] = second_diff(pb, k, d, x);
      D[static_cast<size_t>(d)] = S[static_cast<size_t>(d)].value;
    }
    const LocalOp op = local_operator(pb, D);
    const Vec2 q = centered_gradient(pb, k, x);
    double diag = -rhs_dz(pb, k, x[k], q);
    for (int g = 0; g < 3; ++g) {
      const int d = op.dirs[static_cast<size_t>(g)];
      if (d < 0) continue;
      const SecondDiff& s = S[static_cast<size_t>(d)];
      const double w = op.dT[static_cast<size_t>(g)];
      diag += w * s.c0;
      const Arm& p = pb.arm(k, d, 0);
      const Arm& m = pb.arm(k, d, 1);
      if (p.target >= 0) trip.emplace_back(static_cast<int>(k), p.target, w * s.cp);
      if (m.target >= 0) trip.emplace_back(static_cast<int>(k), m.target, w * s.cm);
    }
    trip.emplace_back(static_cast<int>(k), static_cast<int>(k), diag);
  }
  Eigen::SparseMatrix<double> J(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  J.setFromTriplets(trip.begin(), trip.end());
  J.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(J);
  if (lu.info() != Eigen::Success) return false;
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (size_t k = 0; k < n; ++k) rhs(static_cast<Eigen::Index>(k)) = -R[k];
  const Eigen::VectorXd dx = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !dx.allFinite()) return false;

  std::vector<double> trial(n), Rt;
  double alpha = damping;
  for (int ls = 0; ls < 30; ++ls, alpha *= 0.5) {
    for (size_t k = 0; k < n; ++k) trial[k] = x[k] + alpha * dx(static_cast<Eigen::Index>(k));
    double tn;
    try {
      tn = residual_norm(pb, trial, Rt);
    } catch (const Error&) {
      continue;
    }
    if (tn < (1.0 - 1e-4 * alpha) * norm) {
      x.swap(trial);
      R.swap(Rt);
      norm = tn;
      return true;
    }
  }
  return false;
}

// One nonlinear Gauss-Seidel sweep: each node solves its own monotone scalar equation.
void gauss_seidel_sweep(const Problem& pb, std::vector<double>& x) {
  std::vector<double> D(pb.dirs.size());
  for (size_t k = 0; k < pb.unknowns(); ++k) {
    const double keep = x[k];
    auto g = [&](double v) {
      x[k] = v;
      return node_residual(pb, k, x, D);
    };
    double hi = keep, lo = keep;
    double ghi = g(hi), glo = ghi;
    double step = 1e-3 * std::max(1.0, std::abs(keep));
    int guard = 0;
    if (ghi > 0.0) {
      while (ghi > 0.0 && guard++ < 200) {
        lo = hi;
        glo = ghi;
        hi += step;
        step *= 2.0;
        ghi = g(hi);
      }
    } else {
      while (glo < 0.0 && guard++ < 200) {
        hi = lo;
        ghi = glo;
        lo -= step;
        step *= 2.0;
        glo = g(lo);
      }
    }
    if (!(glo >= 0.0 && ghi <= 0.0)) {
      x[k] = keep;
      continue;
    }
    boost::uintmax_t iters = 100;
    const auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, iters);
    x[k] = 0.5 * (r.first + r.second);
  }
}

SolveStats::Level solve_level(const Problem& pb, std::vector<double>& x, const SolveConfig& cfg, bool final_level) {
  SolveStats::Level st;
  std::vector<double> R;
  double norm = residual_norm(pb, x, R);
  const double tol = final_level ? cfg.tolerance : std::max(cfg.tolerance, 1e-8);
  for (int it = 0; it < cfg.max_iterations && norm >= tol; ++it) {
    ++st.newton_iterations;
    if (!newton_step(pb, x, R, norm, cfg.damping)) {
      for (int s = 0; s < 5; ++s) gauss_seidel_sweep(pb, x);
      st.gs_sweeps += 5;
      norm = residual_norm(pb, x, R);
    }
  }
  st.residual = norm;
  st.converged = norm < tol;
  st.unknowns = static_cast<int>(pb.unknowns());
  return st;
}

}  // namespace

GridField make_grid(const ConvexDomain& dom, const BoundaryData& phi, double h, double tau) {
  const Bounds b = domain_bounds(dom);
  GridField g;
  g.h = h;
  g.ox = std::floor(b.lo.x() / h) * h;
  g.oy = std::floor(b.lo.y() / h) * h;
  g.nx = static_cast<int>(std::ceil((b.hi.x() - g.ox) / h - 1e-9)) + 1;
  g.ny = static_cast<int>(std::ceil((b.hi.y() - g.oy) / h - 1e-9)) + 1;
  g.u.assign(static_cast<size_t>(g.nx) * static_cast<size_t>(g.ny), 0.0);
  g.mask.assign(g.u.size(), static_cast<std::uint8_t>(NodeKind::outside));
  g.domain = std::make_shared<const ConvexDomain>(dom);
  g.phi = phi;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec x = to_vec(g.node(i, j));
      const double sd = dom.signed_distance(x);
      const size_t id = g.index(i, j);
      if (sd > tau * h) {
        g.mask[id] = static_cast<std::uint8_t>(NodeKind::interior);
      } else if (sd >= -1e-12 * h) {
        g.mask[id] = static_cast<std::uint8_t>(NodeKind::dirichlet);
        const Vec p = dom.closest_boundary_point(x);
        g.u[id] = phi(Vec2(p(0), p(1)));
      }
    }
  return g;
}

GridField sample_field(const ConvexDomain& dom, const BoundaryData& phi,
                       const std::function<double(const Vec2&)>& fn, double h, double tau) {
  GridField g = make_grid(dom, phi, h, tau);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      if (g.kind(i, j) == NodeKind::interior) g.u[g.index(i, j)] = fn(g.node(i, j));
  return g;
}

GridField solve_dirichlet_ma(const ConvexDomain& dom, const MaRhs& f, const BoundaryData& phi,
                             const SolveConfig& cfg, SolveStats* stats) {
  cfg.validate();
  if (!f.f) throw Error(ErrorCode::InvalidParams, "missing right-hand side");
  const BoundaryEnvelope env = convex_envelope(sample_boundary(dom, phi, cfg.envelope_samples), dom);
  const Vec c = dom.centroid();
  const Vec2 c2(c(0), c(1));
  double R = 0.0;
  for (const auto& q : dom.boundary_samples(256)) R = std::max(R, (q - c2).norm());
  auto initial = [&](const Vec2& p) {
    return env.value(to_vec(p)) + cfg.initial_dip * ((p - c2).squaredNorm() - R * R);
  };

  SolveStats local;
  GridField prev;
  bool have_prev = false;
  for (int lvl = cfg.levels - 1; lvl >= 0; --lvl) {
    const double h = cfg.h * std::ldexp(1.0, lvl);
    GridField g = make_grid(dom, phi, h, cfg.boundary_tau);
    std::vector<int> unknown_of;
    const Problem pb = build_problem(g, dom, f, cfg, unknown_of);
    std::vector<double> x(pb.unknowns());
    for (size_t k = 0; k < pb.unknowns(); ++k) {
      const Vec2& p = pb.pos[k];
      double v = std::numeric_limits<double>::quiet_NaN();
      if (have_prev) {
        try {
          v = prev.interpolate(p);
        } catch (const Error&) {
        }
      }
      x[k] = std::isfinite(v) ? v : initial(p);
    }
    SolveStats::Level st = solve_level(pb, x, cfg, lvl == 0);
    st.h = h;
    local.levels.push_back(st);
    for (size_t k = 0; k < pb.unknowns(); ++k) g.u[pb.node_of[k]] = x[k];
    prev = std::move(g);
    have_prev = true;
  }
  if (stats) *stats = local;
  if (!local.levels.back().converged)
    throw Error(ErrorCode::NonConvergence,
                "residual " + std::to_string(local.levels.back().residual) + " after " +
                    std::to_string(local.levels.back().newton_iterations) + " iterations");
  return prev;
}

GridField solve_dirichlet_ma(const ConvexDomain& dom, const MaRhs& f,
                             const std::vector<BoundarySample>& samples, const SolveConfig& cfg,
                             SolveStats* stats) {
  return solve_dirichlet_ma(dom, f, interpolate_boundary(samples, dom), cfg, stats);
}

double residual(const GridField& field, const MaRhs& f, const SolveConfig& cfg, double min_dist) {
  if (!field.domain) throw Error(ErrorCode::InvalidParams, "field has no domain");
  std::vector<int> unknown_of;
  const Problem pb = build_problem(field, *field.domain, f, cfg, unknown_of);
  std::vector<double> x(pb.unknowns());
  for (size_t k = 0; k < pb.unknowns(); ++k) x[k] = field.u[pb.node_of[k]];
  std::vector<double> D(pb.dirs.size());
  double m = 0.0;
  for (size_t k = 0; k < pb.unknowns(); ++k) {
    if (min_dist > 0.0 && field.domain->signed_distance(to_vec(pb.pos[k])) < min_dist) continue;
    double r;
    try {
      r = std::abs(node_residual(pb, k, x, D));
    } catch (const Error&) {
      r = std::numeric_limits<double>::infinity();
    }
    m = std::max(m, std::isnan(r) ? std::numeric_limits<double>::infinity() : r);
  }
  return m;
}

BoundaryData interpolate_boundary(const std::vector<BoundarySample>& samples, const ConvexDomain& dom) {
  if (samples.size() < 3) throw Error(ErrorCode::InsufficientSamples, "need at least 3 boundary samples");
  const Vec c = dom.centroid();
  const Vec2 c2(c(0), c(1));
  std::vector<std::pair<double, double>> tab;
  for (const auto& s : samples) tab.emplace_back(std::atan2(s.point.y() - c2.y(), s.point.x() - c2.x()), s.value);
  std::sort(tab.begin(), tab.end());
  return [tab, c2](const Vec2& p) {
    const double th = std::atan2(p.y() - c2.y(), p.x() - c2.x());
    auto it = std::lower_bound(tab.begin(), tab.end(), std::make_pair(th, -std::numeric_limits<double>::infinity()));
    const auto& hi = it == tab.end() ? tab.front() : *it;
    const auto& lo = it == tab.begin() ? tab.back() : *(it - 1);
    double span = hi.first - lo.first, off = th - lo.first;
    if (span <= 0.0) span += 2.0 * std::numbers::pi;
    if (off < 0.0) off += 2.0 * std::numbers::pi;
    const double w = span > 0.0 ? off / span : 0.0;
    return (1.0 - w) * lo.second + w * hi.second;
  };
}

double boundary_exponent(const GridField& field, const Vec2& P, const Vec2& dir,
                         const std::vector<double>& radii) {
  const Vec2 d = dir.normalized();
  const double u0 = field.phi ? field.phi(P) : 0.0;
  std::vector<double> rho, dev;
  for (double r : radii) {
    rho.push_back(r);
    dev.push_back(std::abs(field.interpolate(P + r * d) - u0));
  }
  return fit_power_law(rho, dev).exponent;
}

namespace {
template <class T>
void put(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little, "little-endian host expected");
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  os.write(buf, sizeof(T));
}
template <class T>
T get(std::istream& is) {
  char buf[sizeof(T)];
  if (!is.read(buf, sizeof(T))) throw Error(ErrorCode::Io, "truncated field dump");
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}
}  // namespace

void write_field_csv(const GridField& field, std::ostream& os) {
  os << "x,y,u,kind\n";
  os.precision(17);
  for (int j = 0; j < field.ny; ++j)
    for (int i = 0; i < field.nx; ++i) {
      if (field.kind(i, j) == NodeKind::outside) continue;
      const Vec2 p = field.node(i, j);
      os << p.x() << ',' << p.y() << ',' << field.u[field.index(i, j)] << ','
         << (field.kind(i, j) == NodeKind::interior ? "interior" : "dirichlet") << '\n';
    }
}

void write_field_binary(const GridField& field, std::ostream& os) {
  put<double>(os, field.h);
  put<std::int64_t>(os, field.nx);
  put<std::int64_t>(os, field.ny);
  put<double>(os, field.ox);
  put<double>(os, field.oy);
  for (double v : field.u) put<double>(os, v);
  os.write(reinterpret_cast<const char*>(field.mask.data()), static_cast<std::streamsize>(field.mask.size()));
}

GridField read_field_binary(std::istream& is) {
  GridField g;
  g.h = get<double>(is);
  g.nx = static_cast<int>(get<std::int64_t>(is));
  g.ny = static_cast<int>(get<std::int64_t>(is));
  g.ox = get<double>(is);
  g.oy = get<double>(is);
  if (g.nx <= 0 || g.ny <= 0 || !(g.h > 0.0)) throw Error(ErrorCode::Io, "bad field header");
  const size_t n = static_cast<size_t>(g.nx) * static_cast<size_t>(g.ny);
  g.u.resize(n);
  for (auto& v : g.u) v = get<double>(is);
  g.mask.resize(n);
  if (!is.read(reinterpret_cast<char*>(g.mask.data()), static_cast<std::streamsize>(n)))
    throw Error(ErrorCode::Io, "truncated field dump");
  return g;
}

}  // namespace bhold
