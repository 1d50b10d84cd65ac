#include <doctest.h>

#include <cmath>
#include <random>

#include "bhold/affine_sphere.hpp"
#include "bhold/barrier.hpp"
#include "bhold/error.hpp"
#include "bhold/geometry.hpp"
#include "bhold/verifier.hpp"

using namespace bhold;

namespace {

struct Frozen {
  double a, b, xi, r, xn;
  double W, W_r, W_n, W_rr, W_nn, W_rn;
};

// tests/oracles/barrier_oracle.py
const Frozen kFrozen[] = {
    {2, 2, 1, 0.1, 0.5, -0.69999999999999996, 0.14285714285714285, -0.7142857142857143, 1.4577259475218658,
     0.7288629737609329, -0.1457725947521866},
    {3, 1.5, 0.7, 0.2, 0.4, -0.74930164591159565, 0.30806360195443711, -0.88390131800529026, 1.6036457652675595,
     1.2579242313594818, -0.18170107144613851},
    {1.5, 2, 0.5, 0.05, 0.3, -0.70961933399608668, 0.070460312458560687, -1.5847607769311436, 1.4162024729124703,
     1.7783292888483384, -0.15735583032360781},
};

double W_at(double r, double xn, const BarrierParams& bp) { return *barrier_value(r, xn, bp); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("closed forms match the symbolic oracle") {
  for (const auto& f : kFrozen) {
    const BarrierParams bp{f.a, f.b, f.xi, 0.1};
    const auto be = eval_barrier(f.r, f.xn, bp);
    CHECK(be.W == doctest::Approx(f.W).epsilon(1e-12));
    CHECK(be.W_r == doctest::Approx(f.W_r).epsilon(1e-12));
    CHECK(be.W_n == doctest::Approx(f.W_n).epsilon(1e-12));
    CHECK(be.W_rr == doctest::Approx(f.W_rr).epsilon(1e-12));
    CHECK(be.W_nn == doctest::Approx(f.W_nn).epsilon(1e-12));
    CHECK(be.W_rn == doctest::Approx(f.W_rn).epsilon(1e-12));
  }
}

TEST_CASE("axis values") {
  const BarrierParams bp{3, 1.5, 0.7, 0.1};
  const auto be = eval_barrier(0.0, 0.4, bp);
  CHECK(be.W == doctest::Approx(-std::pow(0.4 / 0.7, 2.0 / 4.5)));
  CHECK(be.W_r == 0.0);
  CHECK(be.W_rn == 0.0);
  CHECK(be.radial_ratio() == doctest::Approx(2.0 / 1.5 * std::pow(std::abs(be.W), 1.0 - 1.5)));
}

TEST_CASE("a=2, b=1 is a quadratic") {
  const BarrierParams bp{2, 1, 1, 0.1};
  const auto be = eval_barrier(0.3, 0.5, bp);
  CHECK(be.W == doctest::Approx(-(0.5 - 0.09)));
  CHECK(be.W_r == doctest::Approx(0.6));
  CHECK(be.W_n == doctest::Approx(-1.0));
  CHECK(be.W_rr == doctest::Approx(2.0));
  CHECK(be.W_nn == doctest::Approx(0.0));
  CHECK(be.W_rn == doctest::Approx(0.0));
}

TEST_CASE("support and height errors") {
  const BarrierParams bp{2, 2, 1, 0.1};
  CHECK(code_of([&] { eval_barrier(1.0, 0.5, bp); }) == ErrorCode::OutsideSupport);
  CHECK(code_of([&] { eval_barrier(0.0, 0.0, bp); }) == ErrorCode::NonPositiveXn);
  CHECK(code_of([&] { eval_barrier(0.0, -1.0, bp); }) == ErrorCode::NonPositiveXn);
  CHECK_FALSE(barrier_value(1.0, 0.5, bp).has_value());
}

TEST_CASE("property: central differences converge at second order") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(1.0, 6.0), ub(0.3, 4.0), uxi(0.2, 3.0), ux(0.05, 0.9), uf(0.05, 0.7);
  for (int k = 0; k < 40; ++k) {
    const BarrierParams bp{ua(rng), ub(rng), uxi(rng), 0.1};
    const double xn = ux(rng);
    const double r = uf(rng) * std::pow(xn / bp.xi, 1.0 / bp.a);
    const auto be = eval_barrier(r, xn, bp);
    const double scale = 0.02 * std::min(r, xn);
    auto errors = [&](double h) {
      const double w = W_at(r, xn, bp);
      const double wr = (W_at(r + h, xn, bp) - W_at(r - h, xn, bp)) / (2 * h);
      const double wn = (W_at(r, xn + h, bp) - W_at(r, xn - h, bp)) / (2 * h);
      const double wrr = (W_at(r + h, xn, bp) - 2 * w + W_at(r - h, xn, bp)) / (h * h);
      const double wnn = (W_at(r, xn + h, bp) - 2 * w + W_at(r, xn - h, bp)) / (h * h);
      const double wrn = (W_at(r + h, xn + h, bp) - W_at(r + h, xn - h, bp) - W_at(r - h, xn + h, bp) +
                          W_at(r - h, xn - h, bp)) /
                         (4 * h * h);
      return std::array<double, 5>{std::abs(wr - be.W_r), std::abs(wn - be.W_n), std::abs(wrr - be.W_rr),
                                   std::abs(wnn - be.W_nn), std::abs(wrn - be.W_rn)};
    };
    const auto e1 = errors(scale);
    const auto e2 = errors(scale / 2);
    for (int c = 0; c < 5; ++c) {
      if (e1[c] < 1e-9) continue;  // derivative term vanishes or is already at round-off
      CAPTURE(c);
      CAPTURE(bp.a);
      CAPTURE(bp.b);
      CHECK(std::log2(e1[c] / e2[c]) >= 1.9);
    }
  }
}

TEST_CASE("identity Hessian") {
  BarrierEval be;
  be.r = 0.3;
  be.x_n = 0.2;
  be.W_r = 0.3;
  be.W_n = 0.2;
  be.W_rr = 1;
  be.W_nn = 1;
  be.W_rn = 0;
  for (int n = 2; n <= 6; ++n) {
    const auto es = hessian_eigenvalues(be, n);
    for (double v : es.values()) CHECK(v == doctest::Approx(1.0));
    CHECK(eigen_bound_check(es, be));
  }
}

TEST_CASE("exact affine-sphere solution") {
  for (int n = 2; n <= 4; ++n) {
    const auto be = affine_sphere::exact_jet(0.1, 0.5);
    Vec x = Vec::Zero(n);
    x(0) = 0.1;
    x(n - 1) = 0.5;
    const double U = affine_sphere::exact(x);
    const auto es = hessian_eigenvalues(be, n);
    const auto v = es.values();
    REQUIRE(v.size() == static_cast<size_t>(n));
    CHECK(es.lambda_min == doctest::Approx(-1.0 / U));
    CHECK(es.lambda_max == doctest::Approx(-1.0 / (U * U * U)));
    CHECK(std::count_if(v.begin(), v.end(), [&](double e) { return std::abs(e + 1.0 / U) < 1e-9; }) == n - 1);
    double det = 1;
    for (double e : v) det *= e;
    CHECK(det == doctest::Approx(std::pow(std::abs(U), -(n + 2))));
    CHECK(eigen_bound_check(es, be));
  }
}

TEST_CASE("lemma hypotheses are enforced") {
  BarrierEval be;
  be.r = 0.3;
  be.W_r = 0.3;
  be.W_rr = 1;
  be.W_nn = 1;
  be.W_rn = 2;
  CHECK(code_of([&] { hessian_eigenvalues(be, 3); }) == ErrorCode::LemmaHypothesisViolated);
  be.W_rn = 0;
  be.W_nn = -1;
  CHECK(code_of([&] { hessian_eigenvalues(be, 3); }) == ErrorCode::LemmaHypothesisViolated);
  CHECK_NOTHROW(hessian_eigenvalues_unchecked(be, 3));
}

TEST_CASE("adversarial spectrum is rejected") {
  const auto be = eval_barrier(0.1, 0.5, BarrierParams{2, 2, 1, 0.1});
  auto es = hessian_eigenvalues(be, 3);
  CHECK(eigen_bound_check(es, be));
  es.lambda_max = be.W_nn * 0.5;
  es.lambda_plus = es.lambda_max;
  CHECK_FALSE(eigen_bound_check(es, be));
}

TEST_CASE("property: lemma spectrum equals the dense spectrum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 3.0), urn(-1.0, 1.0);
  int compared = 0;
  while (compared < 300) {
    BarrierEval be;
    be.r = u(rng);
    be.W_r = u(rng);
    be.W_rr = u(rng);
    be.W_nn = u(rng);
    be.W_rn = urn(rng) * std::sqrt(be.W_rr * be.W_nn);
    if (be.W_rr * be.W_nn - be.W_rn * be.W_rn <= 1e-6) continue;
    for (int n = 2; n <= 6; ++n) {
      Vec e = Vec::Zero(n - 1);
      for (int i = 0; i < n - 1; ++i) e(i) = urn(rng);
      if (e.norm() < 1e-3) e(0) = 1;
      e.normalize();
      const auto dense = jacobi_eigenvalues(assemble_rotational_hessian(be, e, n));
      const auto lemma = hessian_eigenvalues(be, n).values();
      REQUIRE(dense.size() == lemma.size());
      for (size_t i = 0; i < dense.size(); ++i) CHECK(std::abs(dense[i] - lemma[i]) < 1e-10);
    }
    ++compared;
  }
}

TEST_CASE("magnitude bounds") {
  const BarrierParams bp{2, 2, 1, 1e-12};
  const auto tight = barrier_magnitude_bounds(0.3, bp, MagnitudeRegion::assumption7);
  CHECK(tight.width() < 1e-12);
  CHECK(tight.hi == doctest::Approx(std::pow(0.3, 0.5)));
  const auto v = barrier_magnitude_bounds(0.3, bp, "regionV");
  // (1 - (1/4)^{2/a})^{1/b} at a = b = 2.
  CHECK(v.lo / v.hi == doctest::Approx(std::sqrt(0.75)));
  CHECK_THROWS_AS(barrier_magnitude_bounds(0.3, bp, "nowhere"), Error);
}

TEST_CASE("property: |W| bound under the assumption-7 cone") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(1.0, 5.0), ub(0.5, 3.0), ux(0.01, 1.0), uf(0.0, 1.0), ud(0.01, 0.9);
  for (int k = 0; k < 2000; ++k) {
    const BarrierParams bp{ua(rng), ub(rng), 1.0, ud(rng)};
    const double xn = ux(rng);
    const double r = std::sqrt(uf(rng) * bp.delta) * std::pow(xn / bp.xi, 1.0 / bp.a);
    const double w = std::abs(W_at(r, xn, bp));
    CHECK(barrier_magnitude_bounds(xn, bp, MagnitudeRegion::assumption7).contains(w));
  }
}

TEST_CASE("property: |W| bound on sampled points of V") {
  // Interior certificate at the bottom of the affine-sphere disk, a = b = 2, xi = 2^{1-a/2} eta.
  const auto dom = affine_sphere::domain(2);
  Vec P(2);
  P << 0.0, 0.0;
  const auto cert = classify_boundary_point(dom, P, CertKind::interior, 2.0);
  const BarrierParams bp{2, 2, cert.eta, 0.1};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rmax = std::pow(0.25, 0.5) * cert.eps;
  const double top = 0.25 * cert.eta * std::pow(cert.eps, 2.0);
  int inside = 0, outside = 0;
  for (int k = 0; k < 4000; ++k) {
    Vec x(2);
    x << (2 * u(rng) - 1) * rmax, u(rng) * top;
    if (!region_membership(x, Region::V, cert)) continue;
    const double r = std::abs(x(0)), xn = x(1);
    const auto w = barrier_value(r, xn, bp);
    const double mag = w ? std::abs(*w) : 0.0;
    ++inside;
    if (!barrier_magnitude_bounds(xn, bp, MagnitudeRegion::regionV).contains(mag)) ++outside;
  }
  REQUIRE(inside > 100);
  CHECK(outside == 0);
}

TEST_CASE("property: |W| bound where r^2 <= (1/4)^{2/a} (x_n/xi)^{2/a}") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ua(1.0, 6.0), ub(0.3, 4.0), ux(0.01, 1.0), uf(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const BarrierParams bp{ua(rng), ub(rng), 0.7, 0.1};
    const double xn = ux(rng);
    const double r = uf(rng) * std::pow(0.25 * xn / bp.xi, 1.0 / bp.a);
    CHECK(barrier_magnitude_bounds(xn, bp, MagnitudeRegion::regionV).contains(std::abs(W_at(r, xn, bp))));
  }
}
