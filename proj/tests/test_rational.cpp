#include <doctest.h>

#include <stdexcept>

#include "osp/rational.hpp"

using osp::Rational;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 7) == Rational(0));

  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("rational string form") {
  CHECK(Rational(10).str() == "10");
  CHECK(Rational(10, 3).str() == "10/3");
  CHECK(Rational(-1, 2).str() == "-1/2");
}

TEST_CASE("rational guards") {
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  const long long big = 4000000000000000000LL;
  CHECK_THROWS_AS(Rational(big) * Rational(big), std::overflow_error);
}
