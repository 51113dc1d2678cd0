#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "osp/quadrature.hpp"

using namespace osp;

TEST_CASE("gaussian calibration: whole-space integral equals pi^2") {
  const auto result = radial_integral_4d([](double r) { return std::exp(-r * r); });
  const double pi_sq = std::numbers::pi * std::numbers::pi;
  CHECK(result.converged);
  CHECK(std::abs(result.value - pi_sq) <= 1e-10 * pi_sq);
  CHECK(result.error <= 1e-8 * pi_sq);
}

TEST_CASE("weighted integral matches the independent tanh-sinh oracle") {
  const auto integrand = [](double r) { return std::exp(-2.0 * r * r) * r * r * r / (r * r + 1.0); };

  // frozen from the oracle: int_0^inf e^{-2r^2} r^3/(r^2+1) dr
  const double frozen = 0.0693356915558887077;

  const double oracle = osp_test::tanh_sinh_integral(integrand, 0.0, 40.0);
  CHECK(std::abs(oracle - frozen) <= 1e-12 * frozen);

  QuadratureScheme scheme;
  scheme.relative_tolerance = 1e-10;
  const auto adaptive = integrate_adaptive(integrand, 0.0, 40.0, scheme);
  CHECK(adaptive.converged);
  CHECK(std::abs(adaptive.value - oracle) <= 1e-8 * oracle);

  // the full 4D reduction carries the same radial value times 2 pi^2
  const auto reduced =
      radial_integral_4d([](double r) { return std::exp(-2.0 * r * r) / (r * r + 1.0); }, scheme);
  const double sphere = 2.0 * std::numbers::pi * std::numbers::pi;
  CHECK(std::abs(reduced.value - sphere * oracle) <= 1e-8 * sphere * oracle);
}

TEST_CASE("non-decaying integrands are rejected") {
  CHECK_THROWS_AS(radial_integral_4d([](double) { return 1.0; }), QuadratureError);
  CHECK_THROWS_AS(radial_integral_4d([](double r) { return 1.0 / (1.0 + r); }), QuadratureError);
}

TEST_CASE("zero integrand integrates to zero") {
  const auto result = radial_integral_4d([](double) { return 0.0; });
  CHECK(result.value == 0.0);
  CHECK(result.converged);
}

TEST_CASE("adaptive integrator handles a sharp feature") {
  // narrow bump at r = 3 on top of a smooth background
  const auto g = [](double r) {
    return std::exp(-r * r / 25.0) + 50.0 * std::exp(-400.0 * (r - 3.0) * (r - 3.0));
  };
  QuadratureScheme scheme;
  scheme.relative_tolerance = 1e-11;
  const auto adaptive = integrate_adaptive(g, 0.0, 20.0, scheme);
  const double oracle = osp_test::tanh_sinh_integral(g, 0.0, 3.0, 1e-14) +
                        osp_test::tanh_sinh_integral(g, 3.0, 20.0, 1e-14);
  CHECK(adaptive.converged);
  CHECK(std::abs(adaptive.value - oracle) <= 1e-9 * oracle);
}

TEST_CASE("subdivision budget failure is reported") {
  QuadratureScheme scheme;
  scheme.relative_tolerance = 1e-15;
  scheme.max_subdivisions = 2;
  const auto g = [](double r) { return std::sin(100.0 * r) * std::sin(100.0 * r) + 0.01; };
  CHECK_THROWS_AS(integrate_adaptive(g, 0.0, 10.0, scheme), QuadratureError);
}
