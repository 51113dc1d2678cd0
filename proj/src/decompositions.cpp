#include "osp/decompositions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace osp {

namespace {

void require_odd_at_least(int n, int min, const char* what) {
  if (n < min || n % 2 == 0) {
    throw std::invalid_argument(std::string(what) + ": order must be odd and >= " +
                                std::to_string(min) + ", got " + std::to_string(n));
  }
}

OddProfile merge_profiles(const OddProfile& a, const OddProfile& b) {
  OddProfile merged;
  merged.parts.reserve(a.parts.size() + b.parts.size());
  merged.parts.insert(merged.parts.end(), a.parts.begin(), a.parts.end());
  merged.parts.insert(merged.parts.end(), b.parts.begin(), b.parts.end());
  std::sort(merged.parts.begin(), merged.parts.end(), std::greater<int>());
  return merged;
}

// sum over three-block partitions I of C(I) * f(i1) (*) g(i2) (*) g(i3)
FormalSum expand_over_triplets(int n, CoefficientConvention convention,
                               const std::function<FormalSum(int)>& first_factor,
                               const std::function<FormalSum(int)>& other_factor) {
  FormalSum result;
  for (const auto& triplet : enumerate_odd_profiles(n, 3)) {
    FormalSum term = first_factor(triplet.parts[0]);
    term = product(term, other_factor(triplet.parts[1]));
    term = product(term, other_factor(triplet.parts[2]));
    term *= Rational(profile_coefficient(triplet, convention));
    result += term;
  }
  return result;
}

}  // namespace

long long profile_coefficient(const OddProfile& profile, CoefficientConvention convention) {
  return convention == CoefficientConvention::SetPartition ? set_partition_count(profile)
                                                           : multinomial_count(profile);
}

Rational FormalSum::coefficient(const OddProfile& profile) const {
  auto it = terms_.find(profile);
  return it == terms_.end() ? Rational(0) : it->second;
}

void FormalSum::add(const OddProfile& profile, const Rational& coeff) {
  // parts must be odd and ordered; the sum may be even transiently, while a
  // product of three factors is assembled pairwise
  int prev = 0;
  for (int p : profile.parts) {
    if (p < 1 || p % 2 == 0) throw std::invalid_argument("profile parts must be odd and >= 1");
    if (prev != 0 && p > prev) throw std::invalid_argument("profile parts must be non-increasing");
    prev = p;
  }
  if (profile.parts.empty()) throw std::invalid_argument("empty profile");
  if (n_ == 0) {
    n_ = profile.n();
  } else if (profile.n() != n_) {
    throw std::invalid_argument("formal sum mixes profiles of different n");
  }
  auto [it, inserted] = terms_.try_emplace(profile, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  } else if (coeff.is_zero()) {
    terms_.erase(it);
  }
  if (terms_.empty()) n_ = 0;
}

FormalSum& FormalSum::operator+=(const FormalSum& rhs) {
  for (const auto& [profile, coeff] : rhs.terms_) add(profile, coeff);
  return *this;
}

FormalSum& FormalSum::operator-=(const FormalSum& rhs) {
  for (const auto& [profile, coeff] : rhs.terms_) add(profile, -coeff);
  return *this;
}

FormalSum& FormalSum::operator*=(const Rational& scale) {
  if (scale.is_zero()) {
    terms_.clear();
    n_ = 0;
    return *this;
  }
  for (auto& [profile, coeff] : terms_) coeff *= scale;
  return *this;
}

FormalSum product(const FormalSum& a, const FormalSum& b) {
  FormalSum result;
  for (const auto& [pa, ca] : a.terms()) {
    for (const auto& [pb, cb] : b.terms()) {
      result.add(merge_profiles(pa, pb), ca * cb);
    }
  }
  return result;
}

FormalSum classical_decomposition(int n, CoefficientConvention convention) {
  require_odd_at_least(n, 1, "classical_decomposition");
  FormalSum sum;
  for (const auto& profile : enumerate_odd_profiles(n)) {
    sum.add(profile, Rational(profile_coefficient(profile, convention)));
  }
  return sum;
}

FormalSum stripped_decomposition(int n, CoefficientConvention convention) {
  FormalSum sum = classical_decomposition(n, convention);
  OddProfile full_block{{n}};
  sum.add(full_block, -sum.coefficient(full_block));
  return sum;
}

ThreePartSplit three_part_split(int n, CoefficientConvention convention) {
  require_odd_at_least(n, 1, "three_part_split");
  ThreePartSplit split;
  const FormalSum classical = classical_decomposition(n, convention);
  for (const auto& [profile, coeff] : classical.terms()) {
    if (profile.k() == 1) {
      split.t1.add(profile, coeff);
    } else if (profile.k() == 3) {
      split.t2.add(profile, coeff);
    } else {
      split.t3.add(profile, coeff);
    }
  }
  return split;
}

FormalSum tree_reconstruction_rhs(int n, CoefficientConvention convention) {
  require_odd_at_least(n, 5, "tree_reconstruction_rhs");
  const auto classical = [&](int m) { return classical_decomposition(m, convention); };
  return expand_over_triplets(n, convention, classical, classical);
}

FormalSum t3_reconstruction_rhs(int n, CoefficientConvention convention) {
  require_odd_at_least(n, 5, "t3_reconstruction_rhs");
  return expand_over_triplets(
      n, convention, [&](int m) { return stripped_decomposition(m, convention); },
      [&](int m) { return classical_decomposition(m, convention); });
}

AuditReport identity_audit(int n) {
  require_odd_at_least(n, 5, "identity_audit");
  if (n > kAuditLimit) {
    throw std::invalid_argument("oracle scale exceeded: audit guard is n <= " +
                                std::to_string(kAuditLimit));
  }
  const FormalSum classical_sp = classical_decomposition(n, CoefficientConvention::SetPartition);
  const FormalSum classical_mn =
      classical_decomposition(n, CoefficientConvention::Multinomial);
  const FormalSum rhs_sp = tree_reconstruction_rhs(n, CoefficientConvention::SetPartition);
  const FormalSum rhs_mn = tree_reconstruction_rhs(n, CoefficientConvention::Multinomial);
  const FormalSum rhs_t3_sp = t3_reconstruction_rhs(n, CoefficientConvention::SetPartition);
  const FormalSum rhs_t3_mn = t3_reconstruction_rhs(n, CoefficientConvention::Multinomial);

  AuditReport report;
  report.n = n;
  for (const auto& [profile, coeff] : classical_sp.terms()) {
    AuditRow row;
    row.profile = profile;
    row.k = profile.k();
    row.stratum = profile.k() == 1 ? 1 : (profile.k() == 3 ? 2 : 3);
    row.classical_setpart = coeff;
    row.classical_multinomial = classical_mn.coefficient(profile);
    if (row.stratum >= 2) row.lhs_tau_minus_t1 = coeff;
    row.rhs_setpart = rhs_sp.coefficient(profile);
    row.rhs_multinomial = rhs_mn.coefficient(profile);
    row.reconstruction_mismatch = row.lhs_tau_minus_t1 != row.rhs_setpart;
    if (row.stratum == 3) row.lhs_t3 = coeff;
    row.rhs_t3_setpart = rhs_t3_sp.coefficient(profile);
    row.rhs_t3_multinomial = rhs_t3_mn.coefficient(profile);
    if (row.reconstruction_mismatch) ++report.mismatch_count;
    report.rows.push_back(std::move(row));
  }
  return report;
}

double t1_plus_t2_lower_bound(int n, std::span<const Momentum4> momenta,
                              const EnvelopeEvaluator& evaluator) {
  require_odd_at_least(n, 5, "t1_plus_t2_lower_bound");
  if (sign_of_h(n) != -1) {
    throw std::invalid_argument(
        "t1_plus_t2_lower_bound: order " + std::to_string(n) +
        " has positive connected sign; the bound applies to the negative case");
  }
  const double tree = c_bound(n, momenta, evaluator, EnvelopeMode::Min);
  // bracket = 1 - 2 delta_max/(n(n-1)), written through the denominator
  const double bracket =
      1.0 - 6.0 * evaluator.params.lambda /
                delta_max_denominator(n, evaluator.params, evaluator.constants);
  return tree / (6.0 * evaluator.params.lambda) * bracket;
}

}  // namespace osp
