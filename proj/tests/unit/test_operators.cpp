#include <doctest.h>

#include <cmath>
#include <random>

#include "bhold/affine_sphere.hpp"
#include "bhold/error.hpp"
#include "bhold/operators.hpp"

using namespace bhold;

namespace {

std::vector<double> poly_coefficients(const std::vector<double>& eigs) {
  std::vector<double> c{1.0};
  for (double l : eigs) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i];
      next[i + 1] += c[i] * l;
    }
    c = std::move(next);
  }
  return c;
}

double binomial(int n, int k) { return std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)); }

// Independent spelling of the bounding right-hand side.
double rhs_formula(double A, double dist, double beta, int n, double dev, double alpha, double g2, double gamma) {
  return A * std::exp((beta - n - 1) * std::log(dist)) * std::exp(-alpha * std::log(std::abs(dev))) *
         std::exp(0.5 * gamma * std::log1p(g2));
}

StructureValues sphere_values(int n) { return affine_sphere::params(n).values(); }

}  // namespace

TEST_CASE("power_F") {
  EigenSet id;
  id.n = 3;
  id.repeated = id.lambda_minus = id.lambda_plus = id.lambda_min = id.lambda_max = 1.0;
  CHECK(power_F(id, 1, 2.5, 0.7) == doctest::Approx(1.0));
  CHECK(power_F(0.0, 2.0, 1.0, 0.0, 1.0) == doctest::Approx(2.0));
  CHECK(power_F(0.0, 2.0, 1.0, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(power_F(-1.0, 2.0, 1.0, 0.5, 1.0), Error);
  CHECK(power_F(-1.0, 2.0, 1.0, 2.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("power_F on the affine sphere spectrum") {
  for (int n = 2; n <= 4; ++n) {
    const auto be = affine_sphere::exact_jet(0.2, 0.6);
    const auto es = hessian_eigenvalues(be, n);
    Vec x = Vec::Zero(n);
    x(0) = 0.2;
    x(n - 1) = 0.6;
    CHECK(power_F(es, 1, n - 1, 1) == doctest::Approx(std::pow(std::abs(affine_sphere::exact(x)), -(n + 2))));
  }
}

TEST_CASE("property: power_F equals brute force on SPD spectra") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int k = 0; k < 500; ++k) {
    std::vector<double> eigs(5);
    for (auto& e : eigs) e = u(rng);
    const double lo = *std::min_element(eigs.begin(), eigs.end());
    const double hi = *std::max_element(eigs.begin(), eigs.end());
    const double B = u(rng);
    CHECK(power_operator(B, 2, 1)(eigs) == doctest::Approx(lo * lo * hi * B).epsilon(1e-13));
  }
}

TEST_CASE("sigma_k") {
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k) CHECK(sigma_k(std::vector<double>(n, 1.0), k) == doctest::Approx(binomial(n, k)));
  CHECK_THROWS_AS(sigma_k({1, 2, 3}, 0), Error);
  CHECK_THROWS_AS(sigma_k({1, 2, 3}, 4), Error);
  const auto be = affine_sphere::exact_jet(0.1, 0.4);
  const auto v = hessian_eigenvalues(be, 3).values();
  Vec x(3);
  x << 0.1, 0.0, 0.4;
  CHECK(sigma_k(v, 3) == doctest::Approx(std::pow(std::abs(affine_sphere::exact(x)), -5.0)));
}

TEST_CASE("property: sigma_k equals polynomial coefficients") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> dim(1, 7);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> eigs(dim(rng));
    for (auto& e : eigs) e = u(rng);
    const auto c = poly_coefficients(eigs);
    double sum = 0, prod = 1;
    for (double e : eigs) {
      sum += e;
      prod *= e;
    }
    const int n = static_cast<int>(eigs.size());
    for (int k = 1; k <= n; ++k) CHECK(sigma_k(eigs, k) == doctest::Approx(c[k]).epsilon(1e-12));
    CHECK(sigma_k(eigs, 1) == doctest::Approx(sum).epsilon(1e-13));
    CHECK(sigma_k(eigs, n) == doctest::Approx(prod).epsilon(1e-13));
    CHECK(sigma_k_operator(n)(eigs) == doctest::Approx(prod).epsilon(1e-13));
    CHECK(monge_ampere_operator()(eigs) == doctest::Approx(prod).epsilon(1e-13));
  }
}

TEST_CASE("f_bound special cases") {
  RhsBound rb;
  rb.kind = RhsKind::upper_f3;
  rb.params = sphere_values(2);
  rb.envelope = std::make_shared<const BoundaryEnvelope>(BoundaryEnvelope::affine(Vec::Zero(2), 0.0,
                                                                                  EnvelopeKind::convex_sup_affine));
  const DistFn dist = [](const Vec& x) { return 0.5 - (x - Vec2(0, 0.5)).norm(); };
  Vec q(2);
  q << 0.3, -0.4;
  for (double xv : {0.0, 0.1, -0.2}) {
    Vec x(2);
    x << xv, 0.5;
    CHECK(f_bound(x, -0.3, q, rb, dist) == doctest::Approx(std::pow(0.3, -4.0)));
  }
  Vec x(2);
  x << 0.1, 0.4;
  CHECK_THROWS_AS(f_bound(x, 0.0, q, rb, dist), Error);

  rb.params.alpha = 0;
  rb.params.gamma = 0;
  rb.params.beta = 4.5;
  rb.params.A = 2;
  CHECK(f_bound(x, -0.3, q, rb, dist) == doctest::Approx(2 * std::pow(dist(x), 1.5)));

  rb.params.beta = 2.0;  // beta < n+1 at the boundary
  Vec P(2);
  P << 0.0, 0.0;
  try {
    f_bound(P, -0.3, q, rb, dist);
    FAIL("expected BoundaryPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BoundaryPoint);
  }
}

TEST_CASE("property: f_bound equals an independent evaluation") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 3.0), uz(-2.0, 2.0);
  for (int k = 0; k < 500; ++k) {
    StructureValues p;
    p.n = 2 + static_cast<int>(u(rng));
    p.A = u(rng);
    p.alpha = u(rng);
    p.gamma = uz(rng);
    p.beta = p.n + 1 + u(rng);
    const double d = u(rng) * 0.3, dev = uz(rng) + 2.5, g2 = u(rng);
    CHECK(f_bound_deviation(d, dev, g2, p) ==
          doctest::Approx(rhs_formula(p.A, d, p.beta, p.n, dev, p.alpha, g2, p.gamma)).epsilon(1e-13));
  }
}

TEST_CASE("H_tilde homogeneity") {
  const auto be = eval_barrier(0.05, 0.3, BarrierParams{2, 2, 1, 0.1});
  const auto es = hessian_eigenvalues(be, 2);
  auto p = sphere_values(2);
  const auto F = power_operator(1, 1, 1);
  const auto F2 = power_operator(2, 1, 1);
  const double h = H_tilde(be, es, p, F, 0.2);
  CHECK(H_tilde(be, es, p, F2, 0.2) == doctest::Approx(2 * h));
  p.A *= 3;
  CHECK(H_tilde(be, es, p, F, 0.2) == doctest::Approx(h / 3));
}

TEST_CASE("property: exact affine-sphere solution has H = 1") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3}) {
    const auto p = sphere_values(n);
    const auto F = power_operator(1, n - 1, 1);
    RhsBound rb;
    rb.params = p;
    rb.envelope = std::make_shared<const BoundaryEnvelope>(
        BoundaryEnvelope::affine(Vec::Zero(n), 0.0, EnvelopeKind::convex_sup_affine));
    const auto dom = affine_sphere::domain(n);
    const DistFn dist = [&](const Vec& x) { return dom.signed_distance(x); };
    int done = 0;
    double worst = 0;
    while (done < 10000) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x(i) = 0.5 * u(rng);
      x(n - 1) += 0.5;
      if (dom.signed_distance(x) <= 1e-6) continue;
      const double r = x.head(n - 1).norm();
      const auto be = affine_sphere::exact_jet(r, x(n - 1));
      const auto es = hessian_eigenvalues(be, n);
      Vec q = Vec::Zero(n);  // the rhs does not depend on the gradient when gamma = 0
      const double H = F(es.values()) / f_bound(x, be.W, q, rb, dist);
      worst = std::max(worst, std::abs(H - 1));
      CHECK(H_tilde(be, es, rb, F, x, dist) == doctest::Approx(H));
      ++done;
    }
    CHECK(worst < 1e-10);
  }
}
