#include "bhold/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bhold/error.hpp"

namespace bhold {
namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double segment_distance(const Vec2& x, const Vec2& p, const Vec2& q, Vec2* closest) {
  const Vec2 d = q - p;
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? (x - p).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec2 c = p + t * d;
  if (closest) *closest = c;
  return (x - c).norm();
}

Vec2 as2(const Vec& x) {
  if (x.size() != 2) throw Error(ErrorCode::InvalidParams, "polygon domains are two-dimensional");
  return {x(0), x(1)};
}

Vec from2(const Vec2& v) {
  Vec out(2);
  out << v.x(), v.y();
  return out;
}

}  // namespace

ConvexDomain ConvexDomain::polygon(std::vector<Vec2> vertices) {
  std::vector<Vec2> v;
  for (const auto& p : vertices) {
    if (!p.allFinite()) throw Error(ErrorCode::NonConvexDomain, "non-finite vertex");
    if (v.empty() || (p - v.back()).norm() > 0.0) v.push_back(p);
  }
  while (v.size() > 1 && (v.front() - v.back()).norm() == 0.0) v.pop_back();
  if (v.size() < 3) throw Error(ErrorCode::NonConvexDomain, "polygon needs at least 3 distinct vertices");

  double area2 = 0.0;
  for (size_t i = 0; i < v.size(); ++i) area2 += cross(v[i], v[(i + 1) % v.size()]);
  if (area2 == 0.0) throw Error(ErrorCode::NonConvexDomain, "degenerate polygon");
  if (area2 < 0.0) std::reverse(v.begin(), v.end());

  // Drop collinear vertices, reject reflex ones.
  double scale = 0.0;
  for (const auto& p : v) scale = std::max(scale, p.norm());
  scale = std::max(scale, 1e-300);
  std::vector<Vec2> kept;
  for (size_t i = 0; i < v.size(); ++i) {
    const Vec2& prev = v[(i + v.size() - 1) % v.size()];
    const Vec2& next = v[(i + 1) % v.size()];
    const double c = cross(v[i] - prev, next - v[i]);
    if (c < -1e-14 * scale * scale) throw Error(ErrorCode::NonConvexDomain, "polygon is not convex");
    if (c > 1e-14 * scale * scale) kept.push_back(v[i]);
  }
  if (kept.size() < 3) throw Error(ErrorCode::NonConvexDomain, "degenerate polygon");
  // A self-intersecting star has all left turns but winds more than once.
  double turn = 0.0;
  for (size_t i = 0; i < kept.size(); ++i) {
    const Vec2 e0 = kept[(i + 1) % kept.size()] - kept[i];
    const Vec2 e1 = kept[(i + 2) % kept.size()] - kept[(i + 1) % kept.size()];
    turn += std::atan2(cross(e0, e1), e0.dot(e1));
  }
  if (turn > 2.0 * std::numbers::pi + 1e-6) throw Error(ErrorCode::NonConvexDomain, "polygon winds more than once");

  ConvexDomain d;
  d.shape_ = Shape::polygon2d;
  d.vertices_ = kept;
  d.cumulative_.push_back(0.0);
  for (size_t i = 0; i < kept.size(); ++i) {
    const Vec2& p = kept[i];
    const Vec2& q = kept[(i + 1) % kept.size()];
    const Vec2 e = q - p;
    const Vec2 nrm = Vec2(e.y(), -e.x()).normalized();
    d.edge_normals_.push_back(nrm);
    d.edge_offsets_.push_back(nrm.dot(p));
    d.cumulative_.push_back(d.cumulative_.back() + e.norm());
    for (const auto& o : kept) d.diam_ = std::max(d.diam_, (o - p).norm());
  }
  return d;
}

ConvexDomain ConvexDomain::ball(const Vec& center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::NonConvexDomain, "ball radius must be positive");
  if (center.size() < 2) throw Error(ErrorCode::InvalidParams, "ball dimension must be >= 2");
  ConvexDomain d;
  d.shape_ = Shape::ball;
  d.center_ = center;
  d.radius_ = radius;
  d.diam_ = 2.0 * radius;
  return d;
}

Vec ConvexDomain::centroid() const {
  if (shape_ == Shape::ball) return center_;
  double a = 0.0;
  Vec2 c(0.0, 0.0);
  for (size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& p = vertices_[i];
    const Vec2& q = vertices_[(i + 1) % vertices_.size()];
    const double w = cross(p, q);
    a += w;
    c += w * (p + q);
  }
  return from2(c / (3.0 * a));
}

double ConvexDomain::signed_distance(const Vec& x) const {
  if (shape_ == Shape::ball) return radius_ - (x - center_).norm();
  const Vec2 p = as2(x);
  double inside = std::numeric_limits<double>::infinity();
  bool outside = false;
  for (size_t i = 0; i < vertices_.size(); ++i) {
    const double g = edge_offsets_[i] - edge_normals_[i].dot(p);
    if (g < 0.0) outside = true;
    inside = std::min(inside, g);
  }
  if (!outside) return inside;
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < vertices_.size(); ++i)
    best = std::min(best, segment_distance(p, vertices_[i], vertices_[(i + 1) % vertices_.size()], nullptr));
  return -best;
}

Vec ConvexDomain::closest_boundary_point(const Vec& x) const {
  if (shape_ == Shape::ball) {
    Vec d = x - center_;
    const double nd = d.norm();
    if (nd == 0.0) {
      d = Vec::Zero(center_.size());
      d(d.size() - 1) = -1.0;
      return center_ + radius_ * d;
    }
    return center_ + radius_ * d / nd;
  }
  const Vec2 p = as2(x);
  double best = std::numeric_limits<double>::infinity();
  Vec2 arg = vertices_.front();
  for (size_t i = 0; i < vertices_.size(); ++i) {
    Vec2 c;
    const double dist = segment_distance(p, vertices_[i], vertices_[(i + 1) % vertices_.size()], &c);
    if (dist < best) {
      best = dist;
      arg = c;
    }
  }
  return from2(arg);
}

double ConvexDomain::ray_exit(const Vec& x, const Vec& u) const {
  if (shape_ == Shape::ball) {
    const Vec d = x - center_;
    const double b = d.dot(u);
    const double c = d.squaredNorm() - radius_ * radius_;
    const double disc = b * b - c;
    if (disc < 0.0) return 0.0;
    const double root = std::sqrt(disc);
    // Stable larger root of t^2 + 2bt + c = 0.
    const double t = b <= 0.0 ? -b + root : (root + b != 0.0 ? -c / (root + b) : 0.0);
    return std::max(t, 0.0);
  }
  const Vec2 p = as2(x);
  const Vec2 dir = as2(u);
  double t = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < vertices_.size(); ++i) {
    const double nd = edge_normals_[i].dot(dir);
    if (nd <= 0.0) continue;
    t = std::min(t, (edge_offsets_[i] - edge_normals_[i].dot(p)) / nd);
  }
  return std::max(t, 0.0);
}

bool ConvexDomain::on_boundary(const Vec& P, double tol) const {
  return std::abs(signed_distance(P)) <= tol * std::max(1.0, diam_);
}

Vec ConvexDomain::inward_normal(const Vec& P) const {
  if (shape_ == Shape::ball) {
    const Vec d = center_ - P;
    return d / d.norm();
  }
  const Vec2 p = as2(P);
  const double tol = 1e-9 * std::max(1.0, diam_);
  Vec2 acc(0.0, 0.0);
  int hits = 0;
  for (size_t i = 0; i < vertices_.size(); ++i) {
    if (segment_distance(p, vertices_[i], vertices_[(i + 1) % vertices_.size()], nullptr) <= tol) {
      acc -= edge_normals_[i];
      ++hits;
    }
  }
  if (hits == 0) throw Error(ErrorCode::NotOnBoundary, "point is not on the polygon boundary");
  return from2(acc.normalized());
}

Vec2 ConvexDomain::boundary_point(double s) const {
  s -= std::floor(s);
  if (shape_ == Shape::ball) {
    if (center_.size() != 2) throw Error(ErrorCode::InvalidParams, "boundary parametrization needs a 2-D domain");
    const double th = -0.5 * std::numbers::pi + 2.0 * std::numbers::pi * s;
    return {center_(0) + radius_ * std::cos(th), center_(1) + radius_ * std::sin(th)};
  }
  const double L = cumulative_.back();
  const double target = s * L;
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  size_t i = static_cast<size_t>(std::max<std::ptrdiff_t>(0, it - cumulative_.begin() - 1));
  i = std::min(i, vertices_.size() - 1);
  const double seg = cumulative_[i + 1] - cumulative_[i];
  const double f = seg > 0.0 ? (target - cumulative_[i]) / seg : 0.0;
  return vertices_[i] + f * (vertices_[(i + 1) % vertices_.size()] - vertices_[i]);
}

std::vector<Vec2> ConvexDomain::boundary_samples(int count) const {
  if (count < 1) throw Error(ErrorCode::InsufficientSamples, "sample count must be positive");
  std::vector<double> params;
  for (int k = 0; k < count; ++k) params.push_back(static_cast<double>(k) / count);
  if (shape_ == Shape::polygon2d) {
    for (size_t i = 0; i < vertices_.size(); ++i) params.push_back(cumulative_[i] / cumulative_.back());
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end(),
                             [](double x, double y) { return std::abs(x - y) < 1e-15; }),
                 params.end());
  }
  std::vector<Vec2> out;
  out.reserve(params.size());
  for (double s : params) out.push_back(boundary_point(s));
  return out;
}

ConvexDomain ConvexDomain::normalized(double target) const {
  if (diam_ < target) return *this;
  const double f = 0.999 * target / diam_;
  const Vec c = centroid();
  if (shape_ == Shape::ball) return ball(c, radius_ * f);
  std::vector<Vec2> v;
  const Vec2 c2 = as2(c);
  for (const auto& p : vertices_) v.push_back(c2 + f * (p - c2));
  return polygon(v);
}

Frame Frame::at(const Vec& P, const Vec& normal) {
  const int d = static_cast<int>(P.size());
  Frame fr;
  fr.origin = P;
  fr.R = Eigen::MatrixXd::Zero(d, d);
  const Vec nrm = normal.normalized();
  fr.R.row(d - 1) = nrm.transpose();
  if (d == 2) {
    fr.R(0, 0) = nrm(1);
    fr.R(0, 1) = -nrm(0);
    return fr;
  }
  std::vector<Vec> basis{nrm};
  for (int k = 0; k < d && static_cast<int>(basis.size()) < d; ++k) {
    Vec e = Vec::Zero(d);
    e(k) = 1.0;
    for (const auto& b : basis) e -= e.dot(b) * b;
    if (e.norm() > 1e-6) basis.push_back(e.normalized());
  }
  for (int k = 1; k < d; ++k) fr.R.row(k - 1) = basis[static_cast<size_t>(k)].transpose();
  return fr;
}

namespace {

// Boundary points near P in local coordinates, densest close to P.
std::vector<Vec> local_boundary_points(const ConvexDomain& dom, const Frame& fr, int count) {
  std::vector<Vec> pts;
  if (dom.shape() == ConvexDomain::Shape::ball) {
    // Rotational symmetry about the normal: one meridian section is exact.
    const int d = dom.dim();
    const double R = dom.radius();
    auto add = [&](double th) {
      Vec y = Vec::Zero(d);
      y(0) = R * std::sin(th);
      y(d - 1) = 2.0 * R * std::sin(0.5 * th) * std::sin(0.5 * th);
      pts.push_back(y);
    };
    for (int k = 1; k <= count; ++k) add(std::numbers::pi * k / count);
    for (int k = 0; k < 60; ++k) add(std::numbers::pi / count * std::ldexp(1.0, -k));
    return pts;
  }
  for (const auto& q : dom.boundary_samples(count)) pts.push_back(fr.to_local(from2(q)));
  // Geometric refinement along the two boundary directions leaving P.
  const Vec2 p = as2(fr.origin);
  for (int side = -1; side <= 1; side += 2) {
    Vec2 t(fr.R(0, 0), fr.R(0, 1));
    Vec2 n(fr.R(1, 0), fr.R(1, 1));
    for (int k = 0; k < 60; ++k) {
      const double step = dom.diam() / count * std::ldexp(1.0, -k);
      // Walk along the boundary: nearest boundary point to P + side*step*t pushed inward.
      Vec2 probe = p + side * step * t + step * n;
      const Vec2 q = as2(dom.closest_boundary_point(from2(probe)));
      if ((q - p).norm() > 0.0) pts.push_back(fr.to_local(from2(q)));
    }
  }
  return pts;
}

double exterior_eta(const std::vector<Vec>& pts, double a, double diam) {
  double eta = std::numeric_limits<double>::infinity();
  const double tiny = 1e-15 * std::max(1.0, diam);
  for (const auto& y : pts) {
    const int d = static_cast<int>(y.size());
    const double xn = y(d - 1);
    const double r = y.head(d - 1).norm();
    if (xn < -tiny) return -1.0;
    if (r <= tiny) continue;
    eta = std::min(eta, xn / std::pow(r, a));
  }
  return eta;
}

}  // namespace

BoundaryTypeCert classify_boundary_point(const ConvexDomain& dom, const Vec& P, CertKind kind,
                                         double a, const ClassifyOptions& opts) {
  if (!(a >= 1.0)) throw Error(ErrorCode::InvalidParams, "a must be >= 1");
  if (P.size() != dom.dim()) throw Error(ErrorCode::InvalidParams, "point dimension mismatch");
  if (!dom.on_boundary(P)) throw Error(ErrorCode::NotOnBoundary, "P is not on the boundary");
  BoundaryTypeCert cert;
  cert.P = P;
  cert.kind = kind;
  cert.a = a;
  cert.diam = dom.diam();
  cert.frame = Frame::at(P, dom.inward_normal(P));
  const double tol = 1e-12 * std::max(1.0, dom.diam());

  if (kind == CertKind::exterior) {
    double eta = exterior_eta(local_boundary_points(dom, cert.frame, opts.samples), a, dom.diam());
    const auto dense = local_boundary_points(dom, cert.frame, opts.samples * opts.validation_factor);
    eta = std::min(eta, exterior_eta(dense, a, dom.diam()));
    if (!(eta > 1e-14) || !std::isfinite(eta))
      throw Error(ErrorCode::NoCertificate, "no exterior (a,eta) certificate at this point");
    cert.eta = eta;
    cert.validated_samples = static_cast<int>(dense.size());
    return cert;
  }

  const int d = dom.dim();
  Vec nrm = Vec::Zero(d);
  nrm(d - 1) = 1.0;
  const double C = opts.lid_constant.value_or(dom.ray_exit(P, cert.frame.R.row(d - 1).transpose()));
  if (!(C > 0.0)) throw Error(ErrorCode::NoCertificate, "empty normal chord");
  const bool symmetric = dom.shape() == ConvexDomain::Shape::ball;

  auto inside = [&](double xp, double xn) {
    Vec y = Vec::Zero(d);
    y(0) = xp;
    y(d - 1) = xn;
    return dom.signed_distance(cert.frame.to_global(y)) >= -tol;
  };
  auto feasible = [&](double eta, int m) {
    const double eps = std::pow(C / eta, 1.0 / a);
    for (int side = symmetric ? 1 : -1; side <= 1; side += 2) {
      for (int j = 1; j <= m; ++j) {
        const double xp = side * eps * j / m;
        if (!inside(xp, 0.5 * eta * std::pow(std::abs(xp), a))) return false;
        if (!inside(xp, 0.5 * C)) return false;
      }
      for (int k = 0; k < 60; ++k) {
        const double xp = side * eps / m * std::ldexp(1.0, -k);
        if (!inside(xp, 0.5 * eta * std::pow(std::abs(xp), a))) return false;
      }
    }
    return true;
  };

  double hi = 1.0;
  while (!feasible(hi, opts.samples)) {
    hi *= 2.0;
    if (hi > opts.eta_max) throw Error(ErrorCode::NoCertificate, "no interior (a,eta,eps) certificate at this point");
  }
  double lo = hi;
  while (lo > 1e-12 && feasible(lo, opts.samples)) lo *= 0.5;
  if (feasible(lo, opts.samples)) hi = lo;
  for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-13; ++it) {
    const double mid = std::sqrt(lo * hi);
    (feasible(mid, opts.samples) ? hi : lo) = mid;
  }

  // Re-validate on a denser boundary-of-region sample plus random interior points.
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int dense = opts.samples * opts.validation_factor;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 40) throw Error(ErrorCode::NoCertificate, "interior certificate failed re-validation");
    const double eps = std::pow(C / hi, 1.0 / a);
    bool ok = feasible(hi, dense);
    for (int k = 0; ok && k < dense; ++k) {
      const double xp = (symmetric ? U(rng) : 2.0 * U(rng) - 1.0) * eps;
      const double lo_n = 0.5 * hi * std::pow(std::abs(xp), a);
      ok = inside(xp, lo_n + U(rng) * (0.5 * C - lo_n));
    }
    if (ok) break;
    hi *= 1.0 + 1e-6;
  }
  cert.eta = hi;
  cert.eps = std::pow(C / hi, 1.0 / a);
  cert.width = cert.eps;
  cert.validated_samples = 3 * dense;
  return cert;
}

double sphere_condition_radius(const BoundaryTypeCert& cert) {
  if (cert.kind == CertKind::exterior) {
    if (cert.a < 1.0 || cert.a > 2.0)
      throw Error(ErrorCode::RangeMismatch, "exterior sphere radius needs a in [1,2]");
    return std::max(1.0 / cert.eta, cert.diam);
  }
  if (cert.a < 2.0) throw Error(ErrorCode::RangeMismatch, "interior sphere radius needs a >= 2");
  return std::min(1.0 / cert.eta, 0.25 * cert.eta * cert.eps * cert.eps);
}

SphereCheck validate_sphere_condition(const ConvexDomain& dom, const BoundaryTypeCert& cert,
                                      int samples, std::uint64_t seed) {
  SphereCheck out;
  out.radius = sphere_condition_radius(cert);
  const double R = out.radius;
  const int d = dom.dim();
  Vec c = Vec::Zero(d);
  c(d - 1) = R;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  auto random_dir = [&] {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = N01(rng);
    return Vec(v / v.norm());
  };
  const double tol = 1e-12 * std::max(1.0, R);

  if (cert.kind == CertKind::exterior) {
    // Domain inside B_R(R e_n): boundary points and random interior points.
    auto check = [&](const Vec& x) {
      ++out.samples;
      if ((cert.frame.to_local(x) - c).norm() > R + tol) ++out.violations;
    };
    if (d == 2) {
      for (const auto& q : dom.boundary_samples(samples / 2)) check(from2(q));
    } else {
      for (int k = 0; k < samples / 2; ++k) check(dom.center() + dom.radius() * random_dir());
    }
    const Vec ctr = dom.centroid();
    while (out.samples < samples) {
      const Vec dir = random_dir();
      const double t = dom.ray_exit(ctr, dir) * U(rng);
      check(ctr + t * dir);
    }
    return out;
  }
  // B_R(R e_n) inside the domain: sphere points and random ball points.
  for (int k = 0; k < samples; ++k) {
    const double rad = k % 2 == 0 ? R : R * std::pow(U(rng), 1.0 / d);
    const Vec y = c + rad * random_dir();
    ++out.samples;
    if (!dom.contains(cert.frame.to_global(y), tol)) ++out.violations;
  }
  return out;
}

std::optional<Region> parse_region(std::string_view name) {
  if (name == "V") return Region::V;
  if (name == "Vprime") return Region::Vprime;
  if (name == "V0") return Region::V0;
  if (name == "Vtilde") return Region::Vtilde;
  return std::nullopt;
}

bool region_membership(const Vec& x, Region region, const BoundaryTypeCert& cert) {
  const int d = static_cast<int>(x.size());
  const double xn = x(d - 1);
  const double r = x.head(d - 1).norm();
  const double a = cert.a, eta = cert.eta, eps = cert.eps;
  const double ra = std::pow(r, a);
  const double lid = eta * std::pow(eps, a);
  switch (region) {
    case Region::V:
    case Region::Vprime:
      return r < std::pow(0.25, 1.0 / a) * eps && eta * ra < xn && xn < 0.25 * lid;
    case Region::V0:
      return r < std::pow(0.125, 1.0 / a) * eps && 2.0 * eta * ra < xn && xn < 0.25 * lid;
    case Region::Vtilde:
      return r < eps && 0.5 * eta * ra < xn && xn < 0.5 * lid;
  }
  return false;
}

Interval dist_bounds_V(const Vec& x, const BoundaryTypeCert& cert) {
  if (!region_membership(x, Region::V, cert)) throw Error(ErrorCode::OutsideV, "point is not in V");
  const double xn = x(x.size() - 1);
  const double k = cert.a * cert.eta * std::pow(cert.eps, cert.a - 1.0);
  return {0.5 / std::sqrt(1.0 + k * k) * xn, xn};
}

HalfRegion::HalfRegion(const ConvexDomain& dom, Vec P, ScalarField u, HalfRegionOptions opts)
    : dom_(dom), P_(std::move(P)), u_(std::move(u)), opts_(opts) {
  if (!dom_.on_boundary(P_)) throw Error(ErrorCode::NotOnBoundary, "anchor is not on the boundary");
  if (dom_.dim() != 2) throw Error(ErrorCode::InvalidParams, "chord sampling is implemented for planar domains");
  for (int k = 0; k < opts_.chords; ++k) {
    const Vec2 q = dom_.boundary_point((k + 0.5) / opts_.chords);
    const Vec Q = from2(q);
    if ((Q - P_).norm() <= 1e-9 * dom_.diam()) continue;
    chords_.push_back(chord_to(Q));
  }
}

HalfRegion::Chord HalfRegion::chord_dir(const Vec& dir) const {
  Chord c;
  c.length = dom_.ray_exit(P_, dir);
  c.Q = P_ + c.length * dir;
  const int m = opts_.samples_per_chord;
  std::vector<double> vals(static_cast<size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) vals[static_cast<size_t>(j)] = u_(P_ + (c.length * j / m) * dir);
  const auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
  const double tie = 1e-12 * std::max({1.0, std::abs(*mn), std::abs(*mx)});
  size_t js = 0;
  while (vals[js] > *mn + tie) ++js;
  const double tol = opts_.unimodal_tol * std::max(1e-300, *mx - *mn) + tie;
  for (size_t j = 1; j <= js; ++j)
    if (vals[j] > vals[j - 1] + tol) throw Error(ErrorCode::NonConvexSamples, "u is not unimodal along a chord");
  for (size_t j = js + 1; j < vals.size(); ++j)
    if (vals[j] < vals[j - 1] - tol) throw Error(ErrorCode::NonConvexSamples, "u is not unimodal along a chord");

  double t = c.length * static_cast<double>(js) / m;
  if (js > 0 && js < static_cast<size_t>(m)) {
    // Golden-section refinement inside the bracketing cells.
    double lo = c.length * (static_cast<double>(js) - 1) / m, hi = c.length * (static_cast<double>(js) + 1) / m;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = u_(P_ + x1 * dir), f2 = u_(P_ + x2 * dir);
    for (int it = 0; it < 80 && hi - lo > 1e-15 * c.length; ++it) {
      if (f1 <= f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - g * (hi - lo); f1 = u_(P_ + x1 * dir);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + g * (hi - lo); f2 = u_(P_ + x2 * dir);
      }
    }
    t = 0.5 * (lo + hi);
  }
  c.t_star = t;
  c.y = P_ + t * dir;
  return c;
}

HalfRegion::Chord HalfRegion::chord_to(const Vec& Q) const {
  const Vec d = Q - P_;
  return chord_dir(d / d.norm());
}

bool HalfRegion::contains(const Vec& x) const {
  const Vec d = x - P_;
  const double dist = d.norm();
  if (dist == 0.0 || !dom_.contains(x)) return false;
  const Vec dir = d / dist;
  if (dom_.ray_exit(P_, dir) <= 0.0) return false;
  return dist < chord_dir(dir).t_star;
}

double HalfRegion::k_PQ(const Vec& Q) const {
  const Chord c = chord_to(Q);
  return c.t_star / c.length;
}

HalfRegion omega_half(const ConvexDomain& dom, const Vec& P, ScalarField u, const HalfRegionOptions& opts) {
  return HalfRegion(dom, P, std::move(u), opts);
}

std::pair<double, double> domain_ratio_bounds(double mu, double nu, double M, double m, double diam) {
  if (!(0.0 < nu && nu <= mu && mu <= 1.0 && M >= m && m > 0.0 && diam > 0.0))
    throw Error(ErrorCode::ParamOrderViolated, "need 0 < nu <= mu <= 1, M >= m > 0, diam > 0");
  const double c1 = 1.0 / (1.0 + (1.0 + std::pow(diam, 1.0 - nu / mu)) * std::pow(M / m, 1.0 / mu));
  const double c2 = 1.0 / (1.0 + std::pow(m / M, 1.0 / nu));
  return {c1, c2};
}

}  // namespace bhold
