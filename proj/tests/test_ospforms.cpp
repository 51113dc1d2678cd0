#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "osp/ospforms.hpp"

using namespace osp;

namespace {

EnvelopeEvaluator evaluator_for(double lambda, double mass = 1.0,
                                RenormConstants constants = {},
                                EnvelopeMode mode = EnvelopeMode::Min) {
  return EnvelopeEvaluator::make(PhysicalParams{lambda, mass}, constants, 15, mode);
}

std::vector<TestFunction> gaussian_family(int n, double amplitude = 1.0, double width = 1.0) {
  return std::vector<TestFunction>(n, TestFunction::gaussian(amplitude, width));
}

}  // namespace

TEST_CASE("scalar integrals against frozen oracle values") {
  const auto evaluator = evaluator_for(0.1);
  const ScalarIntegrals s =
      scalar_integrals(TestFunction::gaussian(), evaluator, EnvelopeMode::Min);

  // 2 pi^2 int e^{-2r^2} r^3/(r^2+1) dr and 2 pi^2 int e^{-r^2} r^3/(r^2+1) dr
  CHECK(s.norm_sq == doctest::Approx(1.36863169306514694).epsilon(1e-9));
  CHECK(s.g1 == doctest::Approx(3.98389184932633202).epsilon(1e-9));
  CHECK(s.norm_sq >= 0.0);
  CHECK(s.g1 >= 0.0);
}

TEST_CASE("scalar integrals match a live independent oracle") {
  const auto evaluator = evaluator_for(0.07, 1.3);
  const TestFunction f = TestFunction::gaussian(0.8, 1.7);
  const ScalarIntegrals s = scalar_integrals(f, evaluator, EnvelopeMode::Min);

  const double mass_sq = 1.3 * 1.3;
  const auto weight = [&](double r) {
    return (r * r + mass_sq) / ((r * r + mass_sq) * (r * r + mass_sq));
  };
  const double sphere = 2.0 * std::numbers::pi * std::numbers::pi;
  const double norm_oracle = sphere * osp_test::tanh_sinh_integral(
                                          [&](double r) {
                                            const double v = f(r);
                                            return v * v * weight(r) * r * r * r;
                                          },
                                          0.0, 40.0);
  CHECK(s.norm_sq == doctest::Approx(norm_oracle).epsilon(1e-8));
}

TEST_CASE("scalar integrals scale with the amplitude") {
  const auto evaluator = evaluator_for(0.1);
  const ScalarIntegrals base =
      scalar_integrals(TestFunction::gaussian(1.0), evaluator, EnvelopeMode::Min);
  const ScalarIntegrals scaled =
      scalar_integrals(TestFunction::gaussian(3.0), evaluator, EnvelopeMode::Min);
  CHECK(scaled.norm_sq == doctest::Approx(9.0 * base.norm_sq).epsilon(1e-10));
  CHECK(scaled.g1 == doctest::Approx(3.0 * base.g1).epsilon(1e-10));
}

TEST_CASE("min-envelope weight never exceeds the max-envelope weight") {
  const auto evaluator = evaluator_for(0.1);
  const ScalarIntegrals lo =
      scalar_integrals(TestFunction::gaussian(), evaluator, EnvelopeMode::Min);
  const ScalarIntegrals hi =
      scalar_integrals(TestFunction::gaussian(), evaluator, EnvelopeMode::Max);
  CHECK(lo.norm_sq <= hi.norm_sq);
  CHECK(lo.g1 <= hi.g1);
}

TEST_CASE("small-n checks at representative couplings") {
  const auto family = gaussian_family(1);

  SUBCASE("n = 1 is unconditionally nonnegative") {
    const InequalityCheck check = check_osp_small_n(1, family, evaluator_for(0.1));
    CHECK(check.pass);
    CHECK(check.lhs >= 0.0);
    CHECK(check.rhs == 0.0);
  }

  SUBCASE("n = 3 at lambda = 0.1 has weak factor 0.4") {
    const InequalityCheck check = check_osp_small_n(3, family, evaluator_for(0.1));
    CHECK(check.weak_factor == doctest::Approx(0.4));
    CHECK(check.pass);
    CHECK_FALSE(check.outside_weak_condition);
    CHECK(check.margin >= -kMarginTolerance * check.scale);
  }

  SUBCASE("n = 3 at lambda = 0.2 is flagged outside the weak condition") {
    const InequalityCheck check = check_osp_small_n(3, family, evaluator_for(0.2));
    CHECK(check.outside_weak_condition);
    CHECK(check.weak_factor == doctest::Approx(-0.2));
    // the margin check itself still passes: both sides share the same integrals
    CHECK(check.pass);
  }

  SUBCASE("n = 5 at lambda = 0.04 reproduces the explicit bound") {
    const auto evaluator = evaluator_for(0.04);
    const InequalityCheck check = check_osp_small_n(5, family, evaluator);
    const double d3 = evaluator.bounds.delta_min(3);
    const double d5 = evaluator.bounds.delta_min(5);
    const double coefficient = d5 * d3 + 10.0 * (1.0 - 0.24);
    CHECK(coefficient > 0.0);
    CHECK(check.rhs == doctest::Approx(coefficient * check.scale).epsilon(1e-12));
    CHECK(check.pass);
  }

  SUBCASE("only orders 1, 3, 5 are accepted") {
    CHECK_THROWS_AS(check_osp_small_n(7, family, evaluator_for(0.1)), std::invalid_argument);
    CHECK_THROWS_AS(check_osp_small_n(2, family, evaluator_for(0.1)), std::invalid_argument);
  }
}

TEST_CASE("the family sup picks the largest g1") {
  const auto evaluator = evaluator_for(0.1);
  const std::vector<TestFunction> narrow{TestFunction::gaussian(1.0, 1.0)};
  const std::vector<TestFunction> mixed{TestFunction::gaussian(1.0, 1.0),
                                        TestFunction::gaussian(1.0, 2.0)};
  const ScalarIntegrals wide =
      scalar_integrals(TestFunction::gaussian(1.0, 2.0), evaluator, EnvelopeMode::Min);
  const InequalityCheck base = check_osp_small_n(3, narrow, evaluator);
  const InequalityCheck sup = check_osp_small_n(3, mixed, evaluator);
  // same head norm (slot one), scale driven by the wider Gaussian's g1
  CHECK(sup.scale > base.scale);
  const ScalarIntegrals head =
      scalar_integrals(TestFunction::gaussian(1.0, 1.0), evaluator, EnvelopeMode::Min);
  CHECK(sup.scale == doctest::Approx(head.norm_sq * wide.g1 * wide.g1).epsilon(1e-12));
}

TEST_CASE("margins vanish exactly at zero constants") {
  // with every renorm constant zero, delta_3_max equals 6 lambda and the
  // envelope side coincides with the bound side
  const auto family = gaussian_family(1);
  for (double lambda : {0.01, 0.08, 0.16}) {
    const InequalityCheck c3 = check_osp_small_n(3, family, evaluator_for(lambda));
    CHECK(c3.margin == 0.0);
    const InequalityCheck c5 = check_osp_small_n(5, family, evaluator_for(lambda));
    CHECK(c5.margin == 0.0);
  }
}

TEST_CASE("theorem lower bounds at order 7") {
  const TheoremBounds bounds = theorem31_bounds(7, PhysicalParams{0.1, 1.0}, RenormConstants{});
  CHECK(bounds.h_bracket == doctest::Approx(0.4));  // 1 - 2 delta_5_max / 20 = 1 - 6 lambda
  CHECK(bounds.h_hat_bracket == doctest::Approx(0.4));

  const SplittingBounds table =
      build_splitting_bounds(PhysicalParams{0.1, 1.0}, RenormConstants{}, 7);
  const double product =
      table.delta_min(3) * table.delta_min(5) * table.delta_min(7);  // t_tilde = 1 throughout
  CHECK(bounds.h == doctest::Approx(10.0 * product * 0.4).epsilon(1e-12));
  CHECK(bounds.h_hat == doctest::Approx(21.0 * 0.4 * table.delta_min(3) * table.delta_min(5))
                            .epsilon(1e-12));

  CHECK_THROWS_AS(theorem31_bounds(5, PhysicalParams{0.1, 1.0}, RenormConstants{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(theorem31_bounds(8, PhysicalParams{0.1, 1.0}, RenormConstants{}),
                  std::invalid_argument);
}

TEST_CASE("theorem bounds stay positive across the weak range") {
  for (int i = 1; i <= 100; ++i) {
    const double lambda = i * (1.0 / 6.0) / 101.0;
    const PhysicalParams params{lambda, 1.0};
    for (int n = 7; n <= 13; n += 2) {
      const TheoremBounds bounds = theorem31_bounds(n, params, RenormConstants{});
      CHECK(bounds.h > 0.0);
      CHECK(bounds.h_hat > 0.0);
      CHECK(bounds.h_bracket >= 1.0 - 6.0 * lambda);
      CHECK(bounds.h_hat_bracket >= 1.0 - 6.0 * lambda);
    }
  }
}

TEST_CASE("theorem bounds scale like lambda^((n-1)/2) toward zero coupling") {
  for (int n : {7, 9}) {
    const TheoremBounds upper = theorem31_bounds(n, PhysicalParams{1e-4, 1.0}, RenormConstants{});
    const TheoremBounds lower = theorem31_bounds(n, PhysicalParams{1e-5, 1.0}, RenormConstants{});
    const double slope = std::log10(upper.h / lower.h);
    CHECK(slope == doctest::Approx(0.5 * (n - 1)).epsilon(0.02));
  }
}

TEST_CASE("matrix support at n = 3") {
  const OspMatrix matrix =
      assemble_osp_matrix(3, gaussian_family(3), evaluator_for(0.1), EnvelopeMode::Min);
  CHECK(matrix.entry(1, 1).has_value());
  CHECK(matrix.entry(1, 3).has_value());
  CHECK(matrix.entry(3, 1).has_value());
  CHECK(matrix.entry(2, 2).has_value());
  CHECK_FALSE(matrix.entry(3, 3).has_value());  // outside the triangle
  CHECK(matrix.entry(1, 2).value() == 0.0);     // parity mismatch
  CHECK(matrix.entry(2, 1).value() == 0.0);
  CHECK(matrix.restricted_size() == 2);
}

TEST_CASE("matrix support at n = 5") {
  const OspMatrix matrix =
      assemble_osp_matrix(5, gaussian_family(5), evaluator_for(0.1), EnvelopeMode::Min);
  for (auto [m, n] : {std::pair{1, 1}, {1, 3}, {3, 1}, {1, 5}, {5, 1}, {2, 2}, {2, 4}, {4, 2},
                      {3, 3}}) {
    CHECK(matrix.entry(m, n).has_value());
  }
  for (auto [m, n] : {std::pair{3, 5}, {5, 3}, {4, 4}, {5, 5}}) {
    CHECK_FALSE(matrix.entry(m, n).has_value());
  }
  CHECK(matrix.restricted_size() == 3);
}

TEST_CASE("matrix entries and symmetry") {
  const auto evaluator = evaluator_for(0.1);
  const OspMatrix matrix =
      assemble_osp_matrix(5, gaussian_family(5), evaluator, EnvelopeMode::Min);
  const ScalarIntegrals s =
      scalar_integrals(TestFunction::gaussian(), evaluator, EnvelopeMode::Min);

  CHECK(matrix.entry(1, 1).value() == doctest::Approx(s.norm_sq));
  CHECK(matrix.entry(1, 1).value() >= 0.0);
  CHECK(matrix.entry(1, 3).value() == doctest::Approx(matrix.entry(3, 1).value()));
  CHECK(matrix.entry(2, 4).value() == doctest::Approx(matrix.entry(4, 2).value()));
  // identical slots: the two order-4 forms coincide
  CHECK(matrix.entry(2, 2).value() == doctest::Approx(matrix.entry(1, 3).value()));
}

TEST_CASE("matrix entries are invariant under permuting identical slots") {
  const auto evaluator = evaluator_for(0.08);
  auto family = gaussian_family(5);
  const OspMatrix a = assemble_osp_matrix(5, family, evaluator, EnvelopeMode::Min);
  std::swap(family[0], family[4]);
  std::swap(family[1], family[3]);
  const OspMatrix b = assemble_osp_matrix(5, family, evaluator, EnvelopeMode::Min);
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= 5; ++n) {
      CHECK(a.entry(m, n).has_value() == b.entry(m, n).has_value());
      if (a.entry(m, n)) CHECK(a.entry(m, n).value() == b.entry(m, n).value());
    }
  }
}

TEST_CASE("psd verdicts for the explicit matrices") {
  for (double lambda : {0.04, 0.1, 0.15}) {
    const auto evaluator = evaluator_for(lambda);
    for (int n : {3, 5}) {
      const OspMatrix matrix =
          assemble_osp_matrix(n, gaussian_family(n), evaluator, EnvelopeMode::Min);
      const PsdReport report = psd_check(matrix);
      CHECK(report.triangular_sum >= 0.0);
      CHECK(report.min_eigenvalue >= -kPsdTolerance * report.matrix_norm);
      CHECK(report.psd);
      CHECK(report.triangular_nonneg);
    }
  }
}

TEST_CASE("psd check on degenerate inputs") {
  // 1 x 1 matrix: the single norm entry is its own least eigenvalue
  const auto evaluator = evaluator_for(0.1);
  const OspMatrix one = assemble_osp_matrix(1, gaussian_family(1), evaluator, EnvelopeMode::Min);
  const PsdReport report_one = psd_check(one);
  const ScalarIntegrals s =
      scalar_integrals(TestFunction::gaussian(), evaluator, EnvelopeMode::Min);
  CHECK(report_one.min_eigenvalue == doctest::Approx(s.norm_sq));
  CHECK(report_one.psd);

  // zero test functions give the zero matrix, which is PSD
  const OspMatrix zero =
      assemble_osp_matrix(3, gaussian_family(3, 0.0), evaluator, EnvelopeMode::Min);
  const PsdReport report_zero = psd_check(zero);
  CHECK(report_zero.min_eigenvalue == 0.0);
  CHECK(report_zero.triangular_sum == 0.0);
  CHECK(report_zero.psd);
}

TEST_CASE("symmetric eigenvalue solver on known matrices") {
  const auto eig2 = symmetric_eigenvalues({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(eig2[0] == doctest::Approx(-1.0));
  CHECK(eig2[1] == doctest::Approx(1.0));

  const auto eig3 = symmetric_eigenvalues({{2.0, 0.0, 0.0}, {0.0, 3.0, 4.0}, {0.0, 4.0, 9.0}});
  CHECK(eig3[0] == doctest::Approx(1.0));
  CHECK(eig3[1] == doctest::Approx(2.0));
  CHECK(eig3[2] == doctest::Approx(11.0));

  CHECK_THROWS_AS(symmetric_eigenvalues({{1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("family size validation") {
  CHECK_THROWS_AS(
      assemble_osp_matrix(5, gaussian_family(3), evaluator_for(0.1), EnvelopeMode::Min),
      std::invalid_argument);
  CHECK_THROWS_AS(TestFunction::gaussian(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(TestFunction::gaussian(1.0, 0.0), std::invalid_argument);
}
