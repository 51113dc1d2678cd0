#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "osp/decompositions.hpp"
#include "osp/ospforms.hpp"

using namespace osp;

namespace {

OddProfile profile(std::vector<int> parts) { return OddProfile{std::move(parts)}; }

}  // namespace

TEST_CASE("classical decomposition, set-partition convention") {
  const FormalSum tau2 = classical_decomposition(1);
  CHECK(tau2.terms().size() == 1);
  CHECK(tau2.coefficient(profile({1})) == Rational(1));

  const FormalSum tau4 = classical_decomposition(3);
  CHECK(tau4.terms().size() == 2);
  CHECK(tau4.coefficient(profile({3})) == Rational(1));
  CHECK(tau4.coefficient(profile({1, 1, 1})) == Rational(1));

  const FormalSum tau6 = classical_decomposition(5);
  CHECK(tau6.terms().size() == 3);
  CHECK(tau6.coefficient(profile({5})) == Rational(1));
  CHECK(tau6.coefficient(profile({3, 1, 1})) == Rational(10));
  CHECK(tau6.coefficient(profile({1, 1, 1, 1, 1})) == Rational(1));

  CHECK_THROWS_AS(classical_decomposition(4), std::invalid_argument);
}

TEST_CASE("every classical coefficient is a positive integer under both conventions") {
  for (int n = 1; n <= 13; n += 2) {
    for (auto convention :
         {CoefficientConvention::SetPartition, CoefficientConvention::Multinomial}) {
      const FormalSum sum = classical_decomposition(n, convention);
      for (const auto& [prof, coeff] : sum.terms()) {
        CHECK(coeff.is_integer());
        CHECK(Rational(0) < coeff);
        CHECK(prof.n() == n);
      }
    }
  }
}

TEST_CASE("three-part split strata and reassembly") {
  const ThreePartSplit split5 = three_part_split(5);
  CHECK(split5.t1.coefficient(profile({5})) == Rational(1));
  CHECK(split5.t1.terms().size() == 1);
  CHECK(split5.t2.coefficient(profile({3, 1, 1})) == Rational(10));
  CHECK(split5.t2.terms().size() == 1);
  CHECK(split5.t3.coefficient(profile({1, 1, 1, 1, 1})) == Rational(1));
  CHECK(split5.t3.terms().size() == 1);

  const ThreePartSplit split3 = three_part_split(3);
  CHECK(split3.t1.terms().size() == 1);
  CHECK(split3.t2.coefficient(profile({1, 1, 1})) == Rational(1));  // the k = 3 stratum
  CHECK(split3.t3.empty());

  const ThreePartSplit split1 = three_part_split(1);
  CHECK(split1.t1.coefficient(profile({1})) == Rational(1));
  CHECK(split1.t2.empty());
  CHECK(split1.t3.empty());

  const ThreePartSplit split7 = three_part_split(7);
  CHECK(split7.t2.terms().size() == 2);  // (5,1,1) and (3,3,1)

  for (int n = 1; n <= 13; n += 2) {
    const ThreePartSplit split = three_part_split(n);
    FormalSum reassembled = split.t1;
    reassembled += split.t2;
    reassembled += split.t3;
    CHECK(reassembled.terms() == classical_decomposition(n).terms());
  }
}

TEST_CASE("tree reconstruction right-hand side at n = 5") {
  const FormalSum rhs = tree_reconstruction_rhs(5);
  CHECK(rhs.terms().size() == 2);
  CHECK(rhs.coefficient(profile({3, 1, 1})) == Rational(10));
  CHECK(rhs.coefficient(profile({1, 1, 1, 1, 1})) == Rational(10));
}

TEST_CASE("tree reconstruction right-hand side at n = 7") {
  const FormalSum rhs = tree_reconstruction_rhs(7);
  // 21 * tau6 x tau2 x tau2 + 70 * tau4 x tau4 x tau2, expanded by hand
  CHECK(rhs.terms().size() == 4);
  CHECK(rhs.coefficient(profile({5, 1, 1})) == Rational(21));
  CHECK(rhs.coefficient(profile({3, 3, 1})) == Rational(70));
  CHECK(rhs.coefficient(profile({3, 1, 1, 1, 1})) == Rational(350));
  CHECK(rhs.coefficient(profile({1, 1, 1, 1, 1, 1, 1})) == Rational(91));
}

TEST_CASE("reconstruction agrees with the classical sum on every k = 3 profile") {
  for (int n = 5; n <= 13; n += 2) {
    for (auto convention :
         {CoefficientConvention::SetPartition, CoefficientConvention::Multinomial}) {
      const FormalSum classical = classical_decomposition(n, convention);
      const FormalSum rhs = tree_reconstruction_rhs(n, convention);
      for (const auto& prof : enumerate_odd_profiles(n, 3)) {
        CHECK(rhs.coefficient(prof) == classical.coefficient(prof));
      }
    }
  }
}

TEST_CASE("stripped factor drops exactly the single-block term") {
  const FormalSum stripped = stripped_decomposition(3);
  CHECK(stripped.terms().size() == 1);
  CHECK(stripped.coefficient(profile({1, 1, 1})) == Rational(1));
  CHECK(stripped.coefficient(profile({3})) == Rational(0));
}

TEST_CASE("identity audit at n = 5") {
  const AuditReport report = identity_audit(5);
  CHECK(report.n == 5);
  CHECK(report.rows.size() == 3);

  // rows are in decreasing lexicographic profile order: (5), (3,1,1), (1^5)
  CHECK(report.rows[0].profile == profile({5}));
  CHECK(report.rows[0].stratum == 1);
  CHECK(report.rows[0].lhs_tau_minus_t1 == Rational(0));

  CHECK(report.rows[1].profile == profile({3, 1, 1}));
  CHECK(report.rows[1].stratum == 2);
  CHECK(report.rows[1].classical_setpart == Rational(10));
  CHECK(report.rows[1].rhs_setpart == Rational(10));
  CHECK_FALSE(report.rows[1].reconstruction_mismatch);

  const AuditRow& ones = report.rows[2];
  CHECK(ones.profile == profile({1, 1, 1, 1, 1}));
  CHECK(ones.stratum == 3);
  CHECK(ones.classical_setpart == Rational(1));
  CHECK(ones.classical_multinomial == Rational(120));
  CHECK(ones.lhs_tau_minus_t1 == Rational(1));
  CHECK(ones.rhs_setpart == Rational(10));  // the reported discrepancy
  CHECK(ones.reconstruction_mismatch);
  // marked expansion: the only contribution comes through the stripped factor
  CHECK(ones.lhs_t3 == Rational(1));
  CHECK(ones.rhs_t3_setpart == Rational(10));

  CHECK(report.mismatch_count == 1);
}

TEST_CASE("identity audit at n = 7 and guard") {
  const AuditReport report = identity_audit(7);
  CHECK(report.rows.size() == 5);
  for (const auto& row : report.rows) {
    if (row.profile == profile({3, 1, 1, 1, 1})) {
      CHECK(row.classical_setpart == Rational(35));
      CHECK(row.rhs_setpart == Rational(350));
      CHECK(row.rhs_t3_setpart == Rational(280));
      CHECK(row.reconstruction_mismatch);
    }
    if (row.profile == profile({5, 1, 1})) {
      CHECK_FALSE(row.reconstruction_mismatch);
    }
  }

  CHECK_THROWS_WITH_AS(identity_audit(15), "oracle scale exceeded: audit guard is n <= 13",
                       std::invalid_argument);
  CHECK_THROWS_AS(identity_audit(6), std::invalid_argument);
}

TEST_CASE("lower bound of the first two strata") {
  const auto evaluator =
      EnvelopeEvaluator::make(PhysicalParams{0.1, 1.0}, RenormConstants{}, 13);
  const std::vector<Momentum4> zeros(7);

  const double value = t1_plus_t2_lower_bound(7, zeros, evaluator);
  const double c_over = c_bound(7, zeros, evaluator, EnvelopeMode::Min) / 0.6;
  CHECK(value == doctest::Approx(c_over * 0.4));  // bracket = 1 - 6 lambda at zero constants

  // at the symmetric point the bound collapses onto the closed h_hat form
  const TheoremBounds bounds = theorem31_bounds(7, PhysicalParams{0.1, 1.0}, RenormConstants{});
  CHECK(value == doctest::Approx(bounds.h_hat).epsilon(1e-12));

  CHECK_THROWS_AS(t1_plus_t2_lower_bound(5, std::vector<Momentum4>(5), evaluator),
                  std::invalid_argument);  // positive-sign order
  CHECK_THROWS_AS(t1_plus_t2_lower_bound(6, std::vector<Momentum4>(6), evaluator),
                  std::invalid_argument);
}

TEST_CASE("the strata bound stays nonnegative across the weak range") {
  for (int i = 1; i <= 40; ++i) {
    const double lambda = i * (1.0 / 6.0) / 41.0;
    const auto evaluator =
        EnvelopeEvaluator::make(PhysicalParams{lambda, 1.0}, RenormConstants{}, 13);
    for (int n : {7, 11}) {
      const std::vector<Momentum4> zeros(n);
      CHECK(t1_plus_t2_lower_bound(n, zeros, evaluator) >= 0.0);
    }
  }
}

TEST_CASE("the strata bound stays nonnegative at generic momenta and constants") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  RenormConstants constants;
  constants.a0 = 0.3;
  constants.rho0 = 0.2;
  constants.d0 = 0.05;
  constants.n3_val = 0.4;
  constants.n3_deriv = 0.1;
  for (double lambda : {0.02, 0.08, 0.15}) {
    const auto evaluator = EnvelopeEvaluator::make(PhysicalParams{lambda, 1.0}, constants, 13);
    for (int n : {7, 11}) {
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<Momentum4> momenta(n);
        for (auto& q : momenta) {
          for (auto& c : q.components) c = dist(rng);
        }
        CHECK(t1_plus_t2_lower_bound(n, momenta, evaluator) >= 0.0);
      }
    }
  }
}

TEST_CASE("formal sums reject mixed orders") {
  FormalSum sum;
  sum.add(profile({3}), Rational(1));
  CHECK_THROWS_AS(sum.add(profile({5}), Rational(1)), std::invalid_argument);
}
