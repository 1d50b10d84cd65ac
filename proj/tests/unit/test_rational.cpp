#include <doctest.h>

#include "bhold/error.hpp"
#include "bhold/rational.hpp"

using namespace bhold;

TEST_CASE("decimal input is converted exactly") {
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("-2/5") == Rational(-2, 5));
  CHECK(parse_rational("2.5e2") == Rational(250));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("3") == Rational(3));
}

TEST_CASE("malformed input throws") {
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("doubles round-trip exactly") {
  for (double x : {0.1, -3.75, 1e-300, 12345.678}) CHECK(to_double(rational_from_double(x)) == x);
  CHECK(rational_from_double(0.5) == Rational(1, 2));
}

TEST_CASE("formatting") {
  CHECK(to_string(Rational(1, 2)) == "1/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(is_integer(Rational(6, 3)));
  CHECK_FALSE(is_integer(Rational(1, 3)));
}
