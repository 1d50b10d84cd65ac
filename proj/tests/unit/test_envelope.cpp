#include <doctest.h>

#include <cmath>
#include <random>

#include "bhold/affine_sphere.hpp"
#include "bhold/envelope.hpp"
#include "bhold/error.hpp"

using namespace bhold;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

ConvexDomain square() { return ConvexDomain::polygon({Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}); }

}  // namespace

TEST_CASE("affine data is its own envelope") {
  const auto dom = square();
  const auto phi = [](const Vec2& p) { return 0.3 * p.x() - 1.2 * p.y() + 0.5; };
  const auto s = sample_boundary(dom, phi, 64);
  const auto lo = convex_envelope(s, dom);
  const auto hi = concave_envelope(s, dom);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 500; ++k) {
    const Vec x = v2(u(rng), u(rng));
    CHECK(lo.value(x) == doctest::Approx(phi(Vec2(x(0), x(1)))));
    CHECK(hi.value(x) == doctest::Approx(phi(Vec2(x(0), x(1)))));
    CHECK(lo.gradient(x)(0) == doctest::Approx(0.3));
    CHECK(lo.gradient(x)(1) == doctest::Approx(-1.2));
  }
  Vec g(3);
  g << 1, 2, 3;
  const auto aff = BoundaryEnvelope::affine(g, -1, EnvelopeKind::concave_inf_affine);
  Vec x(3);
  x << 1, 1, 1;
  CHECK(aff.value(x) == doctest::Approx(5.0));
}

TEST_CASE("zero data") {
  const auto dom = affine_sphere::domain(2);
  const auto s = sample_boundary(dom, [](const Vec2&) { return 0.0; }, 128);
  const auto lo = convex_envelope(s, dom);
  const auto hi = concave_envelope(s, dom);
  for (double y : {0.1, 0.5, 0.9}) {
    CHECK(lo.value(v2(0.0, y)) == doctest::Approx(0.0));
    CHECK(hi.value(v2(0.0, y)) == doctest::Approx(0.0));
  }
}

TEST_CASE("affine-sphere boundary data against the linear-programming oracle") {
  // tests/oracles/envelope_oracle.py over 4096 equal-angle samples from the bottom point.
  struct Row {
    double x, y, convex, concave;
  };
  const Row rows[] = {
      {0.0, 0.5, -0.70710678118655, -0.5},
      {0.1, 0.3, -0.547722483858018, -0.316227789269841},
      {-0.2, 0.6, -0.774596639670801, -0.632455578539685},
  };
  const auto dom = affine_sphere::domain(2);
  const auto phi = [](const Vec2& p) { return -std::sqrt(std::max(0.0, p.y())); };
  const auto s = sample_boundary(dom, phi, 4096);
  const auto lo = convex_envelope(s, dom);
  const auto hi = concave_envelope(s, dom);
  for (const auto& r : rows) {
    CHECK(lo.value(v2(r.x, r.y)) == doctest::Approx(r.convex).epsilon(1e-9));
    CHECK(hi.value(v2(r.x, r.y)) == doctest::Approx(r.concave).epsilon(1e-9));
  }
}

TEST_CASE("property: envelopes bracket the data and match at samples") {
  const auto dom = affine_sphere::domain(2);
  const auto phi = [](const Vec2& p) { return p.x() * p.x() - 0.5 * p.y(); };  // convex
  const auto s = sample_boundary(dom, phi, 512);
  const auto lo = convex_envelope(s, dom);
  const auto hi = concave_envelope(s, dom);
  for (const auto& b : s) {
    const Vec x = v2(b.point.x(), b.point.y());
    CHECK(lo.value(x) == doctest::Approx(b.value).epsilon(1e-9));
    CHECK(hi.value(x) == doctest::Approx(b.value).epsilon(1e-9));
  }
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  int n = 0;
  while (n < 2000) {
    const Vec x = v2(u(rng), 0.5 + u(rng));
    if (!dom.contains(x)) continue;
    ++n;
    CHECK(lo.value(x) <= hi.value(x) + 1e-12);
    // Convexity along a random segment.
    const Vec y = v2(u(rng) * 0.2, 0.5 + u(rng) * 0.2);
    const Vec m = 0.5 * (x + y);
    CHECK(lo.value(m) <= 0.5 * (lo.value(x) + lo.value(y)) + 1e-12);
    CHECK(hi.value(m) >= 0.5 * (hi.value(x) + hi.value(y)) - 1e-12);
  }
}

TEST_CASE("envelope errors") {
  const auto dom = square();
  std::vector<BoundarySample> two{{Vec2(0, 0), 0.0}, {Vec2(1, 0), 1.0}};
  CHECK_THROWS_AS(convex_envelope(two, dom), Error);
}
