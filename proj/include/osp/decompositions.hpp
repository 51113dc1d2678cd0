#pragma once

#include <map>
#include <span>
#include <vector>

#include "osp/greens.hpp"
#include "osp/partitions.hpp"
#include "osp/rational.hpp"

namespace osp {

/// Coefficient conventions for the connected-parts decomposition.
///   SetPartition:     labeled set-partition count n!/(prod j! * prod mult!),
///                     validated against the exhaustive oracle.
///   Multinomial: plain multinomial n!/prod j!, the coefficient printed
///                     with the classical decomposition; kept for audits.
enum class CoefficientConvention { SetPartition, Multinomial };

long long profile_coefficient(const OddProfile& profile, CoefficientConvention convention);

/// Formal sum of odd-part profiles with exact rational coefficients. All
/// profiles in one sum partition the same n.
class FormalSum {
 public:
  using Terms = std::map<OddProfile, Rational, ProfileOrder>;

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int n() const { return n_; }

  Rational coefficient(const OddProfile& profile) const;
  void add(const OddProfile& profile, const Rational& coeff);

  FormalSum& operator+=(const FormalSum& rhs);
  FormalSum& operator-=(const FormalSum& rhs);
  FormalSum& operator*=(const Rational& scale);

  /// Distributes two sums: every profile pair merges into the combined
  /// profile of n_a + n_b with multiplied coefficients.
  friend FormalSum product(const FormalSum& a, const FormalSum& b);

 private:
  Terms terms_;
  int n_ = 0;
};

/// Classical connected-parts expansion of the non-connected function at odd
/// order n: one term per odd profile of n.
FormalSum classical_decomposition(int n, CoefficientConvention convention =
                                             CoefficientConvention::SetPartition);

/// classical_decomposition with the single-block term removed; the expansion
/// of a first-factor-stripped ("marked") factor.
FormalSum stripped_decomposition(int n, CoefficientConvention convention =
                                            CoefficientConvention::SetPartition);

/// k = 1 / k = 3 / k >= 5 strata of the classical decomposition.
struct ThreePartSplit {
  FormalSum t1;
  FormalSum t2;
  FormalSum t3;
};

ThreePartSplit three_part_split(int n, CoefficientConvention convention =
                                           CoefficientConvention::SetPartition);

/// Right-hand side of the tree reconstruction claim: sum over three-block
/// partitions I of coefficient(I) times the product of the three factors'
/// classical decompositions.
FormalSum tree_reconstruction_rhs(int n, CoefficientConvention convention =
                                             CoefficientConvention::SetPartition);

/// Same expansion with the largest-block factor stripped of its single-block
/// term (the claimed reconstruction of the k >= 5 stratum).
FormalSum t3_reconstruction_rhs(int n, CoefficientConvention convention =
                                           CoefficientConvention::SetPartition);

/// Per-profile comparison of the classical decomposition against the tree
/// reconstruction, under both coefficient conventions. The audit reports
/// differences; it never asserts that either side is the intended identity.
struct AuditRow {
  OddProfile profile;
  int k = 0;
  int stratum = 0;                 // 1, 2 or 3: the three-part membership
  Rational classical_setpart;
  Rational classical_multinomial;
  Rational lhs_tau_minus_t1;       // classical coefficient, zero on the k = 1 row
  Rational rhs_setpart;            // tree_reconstruction_rhs coefficient
  Rational rhs_multinomial;
  bool reconstruction_mismatch = false;  // lhs vs rhs under the set-partition convention
  Rational lhs_t3;                 // classical coefficient, k >= 5 rows only
  Rational rhs_t3_setpart;         // t3_reconstruction_rhs coefficient
  Rational rhs_t3_multinomial;
};

struct AuditReport {
  int n = 0;
  std::vector<AuditRow> rows;      // decreasing lexicographic profile order
  int mismatch_count = 0;
};

/// Audit guard: formal expansion growth stays well under a second up to 13.
inline constexpr int kAuditLimit = 13;

AuditReport identity_audit(int n);

/// Positive lower bound on the k = 1 plus k = 3 strata in the negative-sign
/// case: (|C^{n+1}|/6 Lambda) * (1 - 2 delta_max / (n(n-1))), evaluated with
/// the min tree envelope. Requires odd n >= 5 with sign_of_h(n) = -1.
double t1_plus_t2_lower_bound(int n, std::span<const Momentum4> momenta,
                              const EnvelopeEvaluator& evaluator);

}  // namespace osp
