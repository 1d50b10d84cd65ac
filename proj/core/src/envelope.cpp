#include "bhold/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <unordered_set>

#include "bhold/error.hpp"
#include "bhold/rational.hpp"

namespace bhold {
namespace {

struct P3 {
  double x, y, z;
};

// Sign of (b-a).((c-a)x(d-a)); exact when the floating-point value is ambiguous.
int orient3d(const P3& a, const P3& b, const P3& c, const P3& d) {
  const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
  const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
  const double wx = d.x - a.x, wy = d.y - a.y, wz = d.z - a.z;
  const double det = ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) + uz * (vx * wy - vy * wx);
  const double perm = std::abs(ux) * (std::abs(vy * wz) + std::abs(vz * wy)) +
                      std::abs(uy) * (std::abs(vx * wz) + std::abs(vz * wx)) +
                      std::abs(uz) * (std::abs(vx * wy) + std::abs(vy * wx));
  if (std::abs(det) > 1e-13 * perm) return det > 0.0 ? 1 : -1;
  auto R = [](double v) { return rational_from_double(v); };
  const Rational Ux = R(b.x) - R(a.x), Uy = R(b.y) - R(a.y), Uz = R(b.z) - R(a.z);
  const Rational Vx = R(c.x) - R(a.x), Vy = R(c.y) - R(a.y), Vz = R(c.z) - R(a.z);
  const Rational Wx = R(d.x) - R(a.x), Wy = R(d.y) - R(a.y), Wz = R(d.z) - R(a.z);
  const Rational e = Ux * (Vy * Wz - Vz * Wy) - Uy * (Vx * Wz - Vz * Wx) + Uz * (Vx * Wy - Vy * Wx);
  return e > 0 ? 1 : (e < 0 ? -1 : 0);
}

struct Face {
  int a, b, c;
};

// Facets of the 3-D convex hull, outward oriented. Points must not be coplanar.
std::vector<Face> convex_hull_3d(const std::vector<P3>& p) {
  const int n = static_cast<int>(p.size());
  auto dist2 = [&](int i, int j) {
    const double dx = p[i].x - p[j].x, dy = p[i].y - p[j].y, dz = p[i].z - p[j].z;
    return dx * dx + dy * dy + dz * dz;
  };
  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (p[i].x < p[i0].x) i0 = i;
  int i1 = i0 == 0 ? 1 : 0;
  for (int i = 0; i < n; ++i)
    if (dist2(i, i0) > dist2(i1, i0)) i1 = i;
  auto line_dist2 = [&](int i) {
    const double ux = p[i1].x - p[i0].x, uy = p[i1].y - p[i0].y, uz = p[i1].z - p[i0].z;
    const double wx = p[i].x - p[i0].x, wy = p[i].y - p[i0].y, wz = p[i].z - p[i0].z;
    const double cx = uy * wz - uz * wy, cy = uz * wx - ux * wz, cz = ux * wy - uy * wx;
    return cx * cx + cy * cy + cz * cz;
  };
  int i2 = -1;
  for (int i = 0; i < n; ++i)
    if (i != i0 && i != i1 && (i2 < 0 || line_dist2(i) > line_dist2(i2))) i2 = i;
  auto plane_dist = [&](int i) {
    const double ux = p[i1].x - p[i0].x, uy = p[i1].y - p[i0].y, uz = p[i1].z - p[i0].z;
    const double vx = p[i2].x - p[i0].x, vy = p[i2].y - p[i0].y, vz = p[i2].z - p[i0].z;
    const double nx = uy * vz - uz * vy, ny = uz * vx - ux * vz, nz = ux * vy - uy * vx;
    return std::abs(nx * (p[i].x - p[i0].x) + ny * (p[i].y - p[i0].y) + nz * (p[i].z - p[i0].z));
  };
  int i3 = -1;
  for (int i = 0; i < n; ++i)
    if (i != i0 && i != i1 && i != i2 && (i3 < 0 || plane_dist(i) > plane_dist(i3))) i3 = i;
  if (i2 < 0 || i3 < 0 || orient3d(p[i0], p[i1], p[i2], p[i3]) == 0)
    throw Error(ErrorCode::InsufficientSamples, "lifted samples are coplanar");
  if (orient3d(p[i0], p[i1], p[i2], p[i3]) > 0) std::swap(i1, i2);

  std::vector<Face> faces{{i0, i1, i2}, {i0, i3, i1}, {i1, i3, i2}, {i2, i3, i0}};
  std::vector<int> order;
  for (int i = 0; i < n; ++i)
    if (i != i0 && i != i1 && i != i2 && i != i3) order.push_back(i);
  std::mt19937_64 rng(20240917);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<char> visible;
  std::unordered_set<std::uint64_t> edges;
  std::vector<Face> next;
  auto key = [n](int a, int b) { return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(b); };
  for (int q : order) {
    visible.assign(faces.size(), 0);
    bool any = false;
    for (size_t f = 0; f < faces.size(); ++f) {
      if (orient3d(p[faces[f].a], p[faces[f].b], p[faces[f].c], p[q]) > 0) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) continue;
    edges.clear();
    for (size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      edges.insert(key(faces[f].a, faces[f].b));
      edges.insert(key(faces[f].b, faces[f].c));
      edges.insert(key(faces[f].c, faces[f].a));
    }
    next.clear();
    for (size_t f = 0; f < faces.size(); ++f) {
      const Face& F = faces[f];
      if (!visible[f]) {
        next.push_back(F);
        continue;
      }
      const int v[3] = {F.a, F.b, F.c};
      for (int e = 0; e < 3; ++e) {
        const int a = v[e], b = v[(e + 1) % 3];
        if (!edges.count(key(b, a))) next.push_back({a, b, q});
      }
    }
    faces.swap(next);
  }
  return faces;
}

// Andrew's monotone chain; counter-clockwise, no collinear points.
std::vector<Vec2> hull_2d(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cr = [](const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Vec2> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cr(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cr(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double bary_min(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const double det = (b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y());
  if (det == 0.0) return -std::numeric_limits<double>::infinity();
  const double l1 = ((b.x() - p.x()) * (c.y() - p.y()) - (c.x() - p.x()) * (b.y() - p.y())) / det;
  const double l2 = ((c.x() - p.x()) * (a.y() - p.y()) - (a.x() - p.x()) * (c.y() - p.y())) / det;
  return std::min({l1, l2, 1.0 - l1 - l2});
}

Vec grad2(double gx, double gy) {
  Vec g(2);
  g << gx, gy;
  return g;
}

}  // namespace

BoundaryEnvelope BoundaryEnvelope::affine(const Vec& g, double c, EnvelopeKind kind) {
  BoundaryEnvelope e;
  e.kind_ = kind;
  e.dim_ = static_cast<int>(g.size());
  e.is_affine_ = true;
  e.affine_g_ = g;
  e.affine_c_ = c;
  return e;
}

BoundaryEnvelope BoundaryEnvelope::build(const std::vector<BoundarySample>& samples,
                                         const ConvexDomain& dom, EnvelopeKind kind) {
  if (dom.dim() != 2) throw Error(ErrorCode::InvalidParams, "sampled envelopes are two-dimensional");
  if (samples.size() < 3) throw Error(ErrorCode::InsufficientSamples, "need at least 3 boundary samples");
  BoundaryEnvelope e;
  e.kind_ = kind;
  e.dim_ = 2;
  e.samples_ = samples;
  e.sign_ = kind == EnvelopeKind::convex_sup_affine ? 1.0 : -1.0;
  const Vec c = dom.centroid();
  e.centroid_ = Vec2(c(0), c(1));

  std::vector<Vec2> xy;
  double zmax = 0.0;
  for (const auto& s : samples) {
    if (!s.point.allFinite() || !std::isfinite(s.value))
      throw Error(ErrorCode::InvalidParams, "non-finite boundary sample");
    xy.push_back(s.point);
    zmax = std::max(zmax, std::abs(s.value));
  }
  const std::vector<Vec2> poly = hull_2d(xy);
  if (poly.size() < 3) throw Error(ErrorCode::InsufficientSamples, "boundary samples are collinear");
  double scale = 0.0;
  for (const auto& p : poly) scale = std::max(scale, (p - poly.front()).norm());
  // Samples must lie on the boundary of their own convex hull.
  for (const auto& p : xy) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < poly.size(); ++i) {
      const Vec2 a = poly[i], b = poly[(i + 1) % poly.size()];
      const Vec2 d = b - a;
      const double t = std::clamp((p - a).dot(d) / d.squaredNorm(), 0.0, 1.0);
      best = std::min(best, (p - a - t * d).norm());
    }
    if (best > 1e-9 * scale) throw Error(ErrorCode::NonConvexDomain, "boundary samples are not in convex position");
  }

  // Exactly affine data: a single plane.
  Eigen::MatrixXd M(static_cast<Eigen::Index>(samples.size()), 3);
  Eigen::VectorXd z(static_cast<Eigen::Index>(samples.size()));
  for (size_t i = 0; i < samples.size(); ++i) {
    M.row(static_cast<Eigen::Index>(i)) << samples[i].point.x(), samples[i].point.y(), 1.0;
    z(static_cast<Eigen::Index>(i)) = samples[i].value;
  }
  const Eigen::Vector3d fit = M.colPivHouseholderQr().solve(z);
  if ((M * fit - z).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + zmax)) {
    BoundaryEnvelope a = affine(grad2(fit(0), fit(1)), fit(2), kind);
    a.samples_ = samples;
    return a;
  }

  // Lifted points with a tiny deterministic perturbation to remove ties.
  std::mt19937_64 rng(0xb0u);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double dxy = 1e-11 * scale, dz = 1e-11 * (zmax > 0.0 ? zmax : 1.0);
  std::vector<P3> pts;
  for (const auto& s : samples)
    pts.push_back({s.point.x() + dxy * U(rng), s.point.y() + dxy * U(rng), e.sign_ * s.value + dz * U(rng)});

  const auto faces = convex_hull_3d(pts);
  e.lo_ = e.hi_ = poly.front();
  for (const auto& p : poly) {
    e.lo_ = e.lo_.cwiseMin(p);
    e.hi_ = e.hi_.cwiseMax(p);
  }
  for (const auto& f : faces) {
    const P3 &A = pts[f.a], &B = pts[f.b], &C = pts[f.c];
    const double ux = B.x - A.x, uy = B.y - A.y, uz = B.z - A.z;
    const double vx = C.x - A.x, vy = C.y - A.y, vz = C.z - A.z;
    const double nx = uy * vz - uz * vy, ny = uz * vx - ux * vz, nz = ux * vy - uy * vx;
    const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (!(nz < -1e-10 * nn)) continue;  // lower facets only, near-vertical slivers dropped
    Plane pl;
    pl.gx = -nx / nz;
    pl.gy = -ny / nz;
    pl.c = A.z - pl.gx * A.x - pl.gy * A.y;
    e.planes_.push_back(pl);
    e.tris_.push_back({Vec2(A.x, A.y), Vec2(B.x, B.y), Vec2(C.x, C.y), static_cast<int>(e.planes_.size()) - 1});
  }
  if (e.tris_.empty()) throw Error(ErrorCode::InsufficientSamples, "no lower facets");

  e.grid_ = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(e.tris_.size()) / 2.0)));
  e.buckets_.assign(static_cast<size_t>(e.grid_ * e.grid_), {});
  const Vec2 span = (e.hi_ - e.lo_).cwiseMax(Vec2(1e-300, 1e-300));
  const double pad = 1e-9 * scale;
  for (size_t t = 0; t < e.tris_.size(); ++t) {
    const Tri& T = e.tris_[t];
    const Vec2 lo = T.p0.cwiseMin(T.p1).cwiseMin(T.p2) - Vec2(pad, pad);
    const Vec2 hi = T.p0.cwiseMax(T.p1).cwiseMax(T.p2) + Vec2(pad, pad);
    auto cell = [&](double v, double l, double s) {
      return std::clamp(static_cast<int>((v - l) / s * e.grid_), 0, e.grid_ - 1);
    };
    for (int i = cell(lo.x(), e.lo_.x(), span.x()); i <= cell(hi.x(), e.lo_.x(), span.x()); ++i)
      for (int j = cell(lo.y(), e.lo_.y(), span.y()); j <= cell(hi.y(), e.lo_.y(), span.y()); ++j)
        e.buckets_[static_cast<size_t>(i * e.grid_ + j)].push_back(static_cast<int>(t));
  }
  return e;
}

std::pair<double, Vec> BoundaryEnvelope::evaluate(const Vec& x) const {
  if (is_affine_) {
    if (x.size() != affine_g_.size()) throw Error(ErrorCode::InvalidParams, "envelope dimension mismatch");
    return {affine_g_.dot(x) + affine_c_, affine_g_};
  }
  if (x.size() != 2) throw Error(ErrorCode::InvalidParams, "envelope dimension mismatch");
  const Vec2 p(x(0), x(1));
  const Vec2 probe = p + 1e-9 * (centroid_ - p);
  const Vec2 span = (hi_ - lo_).cwiseMax(Vec2(1e-300, 1e-300));
  const int i = std::clamp(static_cast<int>((probe.x() - lo_.x()) / span.x() * grid_), 0, grid_ - 1);
  const int j = std::clamp(static_cast<int>((probe.y() - lo_.y()) / span.y() * grid_), 0, grid_ - 1);
  const auto& bucket = buckets_[static_cast<size_t>(i * grid_ + j)];

  int best = -1;
  double best_bary = -std::numeric_limits<double>::infinity();
  for (int t : bucket) {
    const double b = bary_min(probe, tris_[static_cast<size_t>(t)].p0, tris_[static_cast<size_t>(t)].p1,
                              tris_[static_cast<size_t>(t)].p2);
    if (b > best_bary) {
      best_bary = b;
      best = t;
    }
  }
  int plane = -1;
  if (best >= 0 && best_bary >= -1e-12) {
    plane = tris_[static_cast<size_t>(best)].plane;
  } else {
    // Outside every facet (between a curved boundary and its sample polygon):
    // the largest supporting plane among the local candidates, or globally.
    const std::vector<int>* cand = &bucket;
    std::vector<int> all;
    if (bucket.empty()) {
      all.resize(tris_.size());
      std::iota(all.begin(), all.end(), 0);
      cand = &all;
    }
    double v = -std::numeric_limits<double>::infinity();
    for (int t : *cand) {
      const int pl = tris_[static_cast<size_t>(t)].plane;
      const double w = planes_[static_cast<size_t>(pl)].at(p.x(), p.y());
      if (w > v) {
        v = w;
        plane = pl;
      }
    }
  }
  const Plane& P = planes_[static_cast<size_t>(plane)];
  return {sign_ * P.at(p.x(), p.y()), grad2(sign_ * P.gx, sign_ * P.gy)};
}

BoundaryEnvelope convex_envelope(const std::vector<BoundarySample>& samples, const ConvexDomain& dom) {
  return BoundaryEnvelope::build(samples, dom, EnvelopeKind::convex_sup_affine);
}

BoundaryEnvelope concave_envelope(const std::vector<BoundarySample>& samples, const ConvexDomain& dom) {
  return BoundaryEnvelope::build(samples, dom, EnvelopeKind::concave_inf_affine);
}

std::vector<BoundarySample> sample_boundary(const ConvexDomain& dom,
                                            const std::function<double(const Vec2&)>& phi, int count) {
  std::vector<BoundarySample> out;
  for (const auto& q : dom.boundary_samples(count)) out.push_back({q, phi(q)});
  return out;
}

}  // namespace bhold
