#pragma once

#include <optional>
#include <string>
#include <vector>

namespace osp {

/// Integer partition of an odd n into odd parts, stored non-increasing.
struct OddProfile {
  std::vector<int> parts;

  int n() const;                  // sum of parts
  int k() const { return static_cast<int>(parts.size()); }
  std::string str() const;        // "(3,1,1)"

  friend bool operator==(const OddProfile& a, const OddProfile& b) { return a.parts == b.parts; }
};

/// Ordering used everywhere profiles are listed or keyed: lexicographically
/// decreasing, so (n) comes first and (1,...,1) last.
struct ProfileOrder {
  bool operator()(const OddProfile& a, const OddProfile& b) const { return a.parts > b.parts; }
};

/// Throws std::invalid_argument unless every part is odd and >= 1, parts are
/// non-increasing, and the sum is odd.
void validate_profile(const OddProfile& profile);

/// Set partition of {1,...,n} into odd-sized blocks. Blocks are kept sorted
/// internally and listed by smallest element.
struct LabeledSetPartition {
  std::vector<std::vector<int>> blocks;
  OddProfile profile;  // induced block-size profile
};

struct TreeCounts {
  long long t = 0;        // partition count inside the tree term
  long long t_tilde = 0;  // same count with the extremal profile removed
};

/// All odd-part profiles of n in decreasing lexicographic order, optionally
/// restricted to exactly k parts. n must be odd and >= 1; a k with mismatched
/// parity (n - k odd) or k > n is rejected.
std::vector<OddProfile> enumerate_odd_profiles(int n, std::optional<int> k = std::nullopt);

/// Number of labeled set partitions of {1,...,n} with block sizes equal to
/// the profile: n! / (prod parts! * prod multiplicities!).
long long set_partition_count(const OddProfile& profile);

/// Plain multinomial n! / prod parts!, without the automorphism factor. This
/// is the coefficient printed in the classical decomposition; exposed for
/// audit runs next to set_partition_count.
long long multinomial_count(const OddProfile& profile);

/// Exhaustive enumeration of all set partitions of {1,...,n} into odd blocks.
/// Brute-force oracle for set_partition_count; guarded at n <= 11.
std::vector<LabeledSetPartition> enumerate_set_partitions_odd(int n);

/// Maximum n accepted by enumerate_set_partitions_odd.
inline constexpr int kSetPartitionOracleLimit = 11;

/// Tree partition counts. For n in {3, 5} both counts are 1: the n >= 7
/// formula would give t_tilde = 0 there, and a zero factor would annihilate
/// every product bound built from it.
TreeCounts tree_counts(int n);

}  // namespace osp
