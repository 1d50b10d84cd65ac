#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bhold/affine_sphere.hpp"
#include "bhold/error.hpp"
#include "bhold/geometry.hpp"

using namespace bhold;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

ConvexDomain square() {
  return ConvexDomain::polygon({Vec2(0, 0), Vec2(0.6, 0), Vec2(0.6, 0.6), Vec2(0, 0.6)});
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

BoundaryTypeCert manual_cert(CertKind kind, double a, double eta, double eps, double diam) {
  BoundaryTypeCert c;
  c.kind = kind;
  c.a = a;
  c.eta = eta;
  c.eps = eps;
  c.diam = diam;
  c.P = v2(0, 0);
  c.frame = Frame::at(c.P, v2(0, 1));
  return c;
}

}  // namespace

TEST_CASE("domain basics") {
  const auto disk = affine_sphere::domain(2);
  CHECK(disk.diam() == doctest::Approx(1.0));
  CHECK(disk.signed_distance(v2(0, 0.5)) == doctest::Approx(0.5));
  CHECK(disk.on_boundary(v2(0, 0)));
  CHECK(disk.inward_normal(v2(0, 0))(1) == doctest::Approx(1.0));
  const auto sq = square();
  CHECK(sq.diam() == doctest::Approx(0.6 * std::sqrt(2.0)));
  CHECK(sq.signed_distance(v2(0.3, 0.1)) == doctest::Approx(0.1));
  CHECK(sq.signed_distance(v2(-0.1, 0.3)) == doctest::Approx(-0.1));
  const Vec n = sq.inward_normal(v2(0, 0));
  CHECK(n(0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(code_of([] { ConvexDomain::polygon({Vec2(0, 0), Vec2(1, 0), Vec2(0.2, 0.2), Vec2(0, 1)}); }) ==
        ErrorCode::NonConvexDomain);
  const auto big = ConvexDomain::polygon({Vec2(0, 0), Vec2(3, 0), Vec2(3, 3), Vec2(0, 3)}).normalized();
  CHECK(big.diam() < 1.0);
}

TEST_CASE("exterior classification on a disk gives 1/(2R)") {
  for (double R : {0.5, 0.3}) {
    Vec c = v2(0.1, 0.2);
    const auto disk = ConvexDomain::ball(c, R);
    for (double th : {0.0, 1.0, 2.5}) {
      const Vec P = c + R * v2(std::cos(th), std::sin(th));
      const auto cert = classify_boundary_point(disk, P, CertKind::exterior, 2.0);
      CHECK(cert.eta == doctest::Approx(1 / (2 * R)).epsilon(1e-6));
    }
  }
}

TEST_CASE("exterior classification at a square corner and a flat side") {
  const auto sq = square();
  const auto corner = classify_boundary_point(sq, v2(0, 0), CertKind::exterior, 1.0);
  CHECK(corner.eta > 0);
  CHECK(std::isfinite(corner.eta));
  CHECK(code_of([&] { classify_boundary_point(sq, v2(0.3, 0), CertKind::exterior, 1.0); }) ==
        ErrorCode::NoCertificate);
  CHECK(code_of([&] { classify_boundary_point(sq, v2(0.3, 0.3), CertKind::exterior, 1.0); }) ==
        ErrorCode::NotOnBoundary);
}

TEST_CASE("property: exterior certificates hold at every boundary sample") {
  const auto sq = square();
  const auto disk = affine_sphere::domain(2);
  const std::vector<std::pair<const ConvexDomain*, Vec>> cases{
      {&sq, v2(0, 0)}, {&sq, v2(0.6, 0.6)}, {&disk, v2(0, 0)}, {&disk, v2(0.5, 0.5)}};
  for (const auto& [dom, P] : cases) {
    for (double a : {1.0, 2.0}) {
      if (dom == &sq && a == 2.0) continue;
      if (dom == &disk && a == 1.0) continue;
      const auto cert = classify_boundary_point(*dom, P, CertKind::exterior, a);
      for (const auto& q : dom->boundary_samples(20000)) {
        const Vec y = cert.frame.to_local(v2(q.x(), q.y()));
        CHECK(y(1) >= cert.eta * std::pow(std::abs(y(0)), a) - 1e-12);
      }
    }
  }
}

TEST_CASE("interior classification on the disk") {
  const auto disk = affine_sphere::domain(2);
  const auto cert = classify_boundary_point(disk, v2(0, 0), CertKind::interior, 2.0);
  CHECK(cert.validated_samples >= 10000);
  CHECK(cert.eta > 0);
  CHECK(cert.eps > 0);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  const double top = 0.5 * cert.eta * std::pow(cert.eps, cert.a);
  int n = 0;
  while (n < 10000) {
    const Vec y = v2(cert.width * u(rng), top * (0.5 + 0.5 * u(rng)));
    if (!(0.5 * cert.eta * std::pow(std::abs(y(0)), cert.a) < y(1))) continue;
    ++n;
    CHECK(disk.contains(cert.frame.to_global(y), 1e-12));
  }
}

TEST_CASE("sphere condition radius") {
  CHECK(sphere_condition_radius(manual_cert(CertKind::exterior, 2, 1, 0, 0.9)) == doctest::Approx(1.0));
  CHECK(sphere_condition_radius(manual_cert(CertKind::interior, 2, 4, 0.5, 0.9)) == doctest::Approx(0.25));
  CHECK(code_of([] { sphere_condition_radius(manual_cert(CertKind::exterior, 3, 1, 0, 0.9)); }) ==
        ErrorCode::RangeMismatch);
  CHECK(code_of([] { sphere_condition_radius(manual_cert(CertKind::interior, 1.5, 1, 0.5, 0.9)); }) ==
        ErrorCode::RangeMismatch);
}

TEST_CASE("property: sphere inclusions hold by sampling") {
  const auto sq = square();
  const auto disk = affine_sphere::domain(2);
  struct Case {
    const ConvexDomain* dom;
    Vec P;
    CertKind kind;
    double a;
  };
  const std::vector<Case> cases{{&sq, v2(0, 0), CertKind::exterior, 1.0},
                                {&disk, v2(0, 0), CertKind::exterior, 2.0},
                                {&disk, v2(0.5, 0.5), CertKind::interior, 2.0},
                                {&disk, v2(0, 0), CertKind::interior, 3.0},
                                {&sq, v2(0.3, 0), CertKind::interior, 2.0}};
  for (const auto& c : cases) {
    const auto cert = classify_boundary_point(*c.dom, c.P, c.kind, c.a);
    const auto chk = validate_sphere_condition(*c.dom, cert, 10000, 7);
    CHECK(chk.samples == 10000);
    CHECK(chk.violations == 0);
  }
}

TEST_CASE("dist_bounds_V") {
  const auto cert = manual_cert(CertKind::interior, 2, 1, 0.5, 1);
  const auto iv = dist_bounds_V(v2(0, 0.03), cert);
  CHECK(iv.hi == doctest::Approx(0.03));
  CHECK(iv.lo / iv.hi == doctest::Approx(1 / (2 * std::sqrt(2.0))));
  CHECK(code_of([&] { dist_bounds_V(v2(0, 0.5), cert); }) == ErrorCode::OutsideV);

  const auto disk = affine_sphere::domain(2);
  for (double a : {2.0, 3.0}) {
    const auto dc = classify_boundary_point(disk, v2(0, 0), CertKind::interior, a);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    const double rmax = std::pow(0.25, 1 / a) * dc.eps, top = 0.25 * dc.eta * std::pow(dc.eps, a);
    int n = 0, bad = 0;
    while (n < 10000) {
      const Vec y = v2(rmax * u(rng), top * 0.5 * (1 + u(rng)));
      if (!region_membership(y, Region::V, dc)) continue;
      ++n;
      const double d = disk.signed_distance(dc.frame.to_global(y));
      if (!dist_bounds_V(y, dc).contains(d)) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("region predicates") {
  const auto cert = manual_cert(CertKind::interior, 2, 1, 0.5, 1);
  for (auto r : {Region::V, Region::Vprime, Region::V0, Region::Vtilde}) CHECK_FALSE(region_membership(v2(0, 0), r, cert));
  const Vec axis = v2(0, 0.125 * 0.25);
  CHECK(region_membership(axis, Region::V, cert));
  CHECK(region_membership(axis, Region::V0, cert));
  CHECK(parse_region("V0") == Region::V0);
  CHECK_FALSE(parse_region("W").has_value());
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k < 100000; ++k) {
    const Vec y = v2(0.5 * u(rng), 0.15 * (1 + u(rng)));
    const bool v0 = region_membership(y, Region::V0, cert), v = region_membership(y, Region::V, cert),
               vt = region_membership(y, Region::Vtilde, cert);
    if (v0) CHECK(v);
    if (v) CHECK(vt);
  }
}

TEST_CASE("half region of a cone over a disk") {
  const Vec c = v2(0, 0.5);
  const auto disk = ConvexDomain::ball(c, 0.5);
  const Vec P = v2(0, 0);
  const auto hr = omega_half(disk, P, [&](const Vec& x) { return (x - c).norm() - 0.5; });
  for (const auto& ch : hr.chords()) {
    CHECK(ch.t_star / ch.length == doctest::Approx(0.5).epsilon(1e-6));
    CHECK((ch.y - 0.5 * (P + ch.Q)).norm() < 1e-6);
  }
  // Chord midpoints from P lie on the circle with diameter Pc.
  CHECK(hr.contains(v2(0, 0.2)));
  CHECK_FALSE(hr.contains(v2(0, 0.55)));
  CHECK_FALSE(hr.contains(v2(0.2, 0.5)));
}

TEST_CASE("half region of a monotone function is the whole domain") {
  const auto disk = affine_sphere::domain(2);
  const auto hr = omega_half(disk, v2(0, 0), [](const Vec& x) { return -x(1); });
  for (const auto& ch : hr.chords()) CHECK(ch.t_star / ch.length == doctest::Approx(1.0));
  CHECK(hr.contains(v2(0.1, 0.9)));
}

TEST_CASE("half region of a paraboloid matches a brute-force chord scan") {
  const auto sq = square();
  const Vec c = v2(0.35, 0.25);
  const Vec P = v2(0.0, 0.2);
  const auto u = [&](const Vec& x) { return (x - c).squaredNorm(); };
  const auto hr = omega_half(sq, P, u);
  for (const auto& ch : hr.chords()) {
    const Vec d = (ch.Q - P) / ch.length;
    double best = 0, bv = u(P);
    for (int j = 1; j <= 200000; ++j) {
      const double t = ch.length * j / 200000.0;
      if (u(P + t * d) < bv) bv = u(P + t * d), best = t;
    }
    CHECK(ch.t_star == doctest::Approx(best).epsilon(1e-4));
    // u is non-increasing from P to y_Q.
    double prev = u(P);
    for (int j = 1; j <= 50; ++j) {
      const double v = u(P + (ch.t_star * j / 50.0) * d);
      CHECK(v <= prev + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("non-unimodal chords are rejected") {
  const auto disk = affine_sphere::domain(2);
  CHECK(code_of([&] { omega_half(disk, v2(0, 0), [](const Vec& x) { return std::sin(40 * x(1)); }); }) ==
        ErrorCode::NonConvexSamples);
  CHECK(code_of([&] { omega_half(disk, v2(0, 0.5), [](const Vec& x) { return x(0); }); }) ==
        ErrorCode::NotOnBoundary);
}

TEST_CASE("domain ratio bounds") {
  auto [c1, c2] = domain_ratio_bounds(0.5, 0.5, 2, 2, 0.9);
  CHECK(c1 == doctest::Approx(1.0 / 3));
  CHECK(c2 == doctest::Approx(0.5));
  std::tie(c1, c2) = domain_ratio_bounds(0.5, 0.5, 1e12, 1, 0.9);
  CHECK(c1 < 1e-20);
  CHECK(code_of([] { domain_ratio_bounds(0.5, 0.7, 1, 1, 1); }) == ErrorCode::ParamOrderViolated);
  CHECK(code_of([] { domain_ratio_bounds(0.5, 0.5, 1, 2, 1); }) == ErrorCode::ParamOrderViolated);
}

TEST_CASE("half region of a cone has a' <= a at the anchor") {
  // Spot-check: the half region's boundary near P is the circle of diameter Pc, radius R/2, so the
  // exterior constant at P doubles while a stays 2.
  const Vec c = v2(0, 0.5);
  const auto disk = ConvexDomain::ball(c, 0.5);
  const auto half = ConvexDomain::ball(v2(0, 0.25), 0.25);
  const auto full = classify_boundary_point(disk, v2(0, 0), CertKind::exterior, 2.0);
  const auto sub = classify_boundary_point(half, v2(0, 0), CertKind::exterior, 2.0);
  CHECK(sub.a <= full.a);
  CHECK(sub.eta == doctest::Approx(2 * full.eta).epsilon(1e-6));
}
