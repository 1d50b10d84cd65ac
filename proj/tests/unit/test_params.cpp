#include <doctest.h>

#include <random>

#include "bhold/error.hpp"
#include "bhold/params.hpp"

using namespace bhold;

namespace {

StructureParams make(int n, Rational alpha, Rational beta, Rational gamma, Rational s, Rational t) {
  StructureParams p;
  p.n = n;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = gamma;
  p.s = s;
  p.t = t;
  return p;
}

}  // namespace

TEST_CASE("affine sphere exponent is one half") {
  const auto p = make(2, 4, 3, 0, 1, 1);
  const auto e = mu_exponent(Rational(2), p);
  CHECK(e.mu == Rational(1, 2));
  CHECK(e.branch == Branch::formula);
  CHECK(admissible_b_interval(Rational(2), p, Side::subsolution).b0 == Rational(2));
}

TEST_CASE("saturated branch returns one") {
  const auto e = mu_exponent(Rational(2), make(2, 3, 10, 0, 1, 1));
  CHECK(e.mu == Rational(1));
  CHECK(e.branch == Branch::saturated_one);
}

TEST_CASE("Lazer-McKenna family") {
  for (int n = 2; n <= 6; ++n)
    for (int alpha = 2; alpha <= 6; ++alpha) {
      const auto e = mu_exponent(Rational(2), make(n, alpha, n + 1, 0, n - 1, 1));
      CHECK(e.mu == Rational(n + 1, n + alpha));
    }
  CHECK(mu_exponent(Rational(2), make(2, 3, 3, 0, 1, 1)).mu == Rational(3, 5));
}

TEST_CASE("b0 examples") {
  CHECK(admissible_b_interval(Rational(2), make(2, 3, 3, 0, 1, 1), Side::subsolution).b0 == Rational(5, 3));
  // a(beta-gamma-n-1+2t)+2s = 2(alpha-gamma+s+t) with a=3, beta=4, s=t=1 forces alpha=7/2.
  CHECK(admissible_b_interval(Rational(3), make(2, Rational(7, 2), 4, 0, 1, 1), Side::subsolution).b0 == Rational(1));
}

TEST_CASE("interval shapes") {
  const auto p = make(2, 4, 3, 0, 1, 1);
  const auto sub = admissible_b_interval(Rational(2), p, Side::subsolution);
  REQUIRE(sub.upper);
  CHECK(*sub.upper == Rational(6));
  CHECK(sub.contains(Rational(2)));
  CHECK(sub.contains(6.0));
  CHECK_FALSE(sub.contains(1.5));
  const auto sup = admissible_b_interval(Rational(2), p, Side::supersolution);
  CHECK(sup.lower_open);
  CHECK(sup.contains(2.0));
  CHECK_FALSE(sup.contains(0.0));
  CHECK_FALSE(sup.contains(2.5));
  // s = 0: unbounded above.
  CHECK_FALSE(admissible_b_interval(Rational(2), make(2, 4, 3, 0, 0, 1), Side::subsolution).upper);
}

TEST_CASE("mu equals 2/(a b0)") {
  const auto p = make(2, 4, 3, 0, 1, 1);
  auto c = mu_equals_two_over_ab(Rational(2), Rational(2), p);
  CHECK(c.applicable);
  CHECK(c.equal);
  c = mu_equals_two_over_ab(Rational(2), Rational(5, 3), make(2, 3, 3, 0, 1, 1));
  CHECK(c.equal);
  CHECK(c.mu == Rational(3, 5));
  CHECK_FALSE(mu_equals_two_over_ab(Rational(2), Rational(2), make(2, 3, 10, 0, 1, 1)).applicable);
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(mu_exponent(Rational(2), make(2, 4, 2, 0, 1, 1)), Error);  // beta < n+1+gamma
  CHECK_THROWS_AS(mu_exponent(Rational(1, 2), make(2, 4, 3, 0, 1, 1)), Error);
  auto p = make(2, 4, 3, 0, 1, 1);
  p.B = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p = make(2, 1, 3, 0, 0, 0);
  try {
    admissible_b_interval(Rational(2), p, Side::subsolution);
    FAIL("expected DegenerateDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDenominator);
  }
}

TEST_CASE("property: mu in (0,1], non-increasing in a, mu a b0 = 2 on the formula branch") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> small(0, 8), dim(2, 6);
  int formula = 0;
  for (int k = 0; k < 500; ++k) {
    const int n = dim(rng);
    const Rational gamma(small(rng), 4);
    const Rational beta = n + 1 + gamma + Rational(small(rng), 3);
    const auto p = make(n, Rational(small(rng) + 1, 2), beta, gamma, Rational(small(rng), 2), Rational(small(rng), 2));
    Rational prev(2);
    for (int j = 0; j <= 8; ++j) {
      const Rational a = 1 + Rational(j, 2);
      ExponentResult e;
      try {
        e = mu_exponent(a, p);
      } catch (const Error&) {
        break;
      }
      CHECK(e.mu > 0);
      CHECK(e.mu <= 1);
      CHECK(e.mu <= prev);
      prev = e.mu;
      if (e.branch == Branch::formula) {
        ++formula;
        const auto iv = admissible_b_interval(a, p, Side::subsolution);
        CHECK(e.mu * a * iv.b0 == 2);
      }
    }
  }
  CHECK(formula > 100);
}

TEST_CASE("sign conditions at b0 in the affine sphere case") {
  const auto sc = sign_conditions(2.0, 2.0, make(2, 4, 3, 0, 1, 1).values());
  CHECK(sc.cond1 == doctest::Approx(0.0));
  CHECK(sc.cond2 == doctest::Approx(-2.0));
}
