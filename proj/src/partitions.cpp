#include "osp/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace osp {

namespace {

void require_odd(int n, int min, const char* what) {
  if (n < min || n % 2 == 0) {
    throw std::invalid_argument(std::string(what) + ": n must be odd and >= " +
                                std::to_string(min) + ", got " + std::to_string(n));
  }
}

long long checked_mul(long long a, long long b, const char* what) {
  const __int128 p = static_cast<__int128>(a) * b;
  if (p > static_cast<__int128>(9223372036854775807LL)) {
    throw std::overflow_error(std::string("count overflow in ") + what);
  }
  return static_cast<long long>(p);
}

// C(n, r) with overflow checking; exact at every intermediate step.
long long binomial(int n, int r, const char* what) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  long long result = 1;
  for (int i = 1; i <= r; ++i) {
    result = checked_mul(result, n - r + i, what);
    result /= i;
  }
  return result;
}

void profiles_rec(int remaining, int max_part, std::optional<int> parts_left,
                  std::vector<int>& current, std::vector<OddProfile>& out) {
  if (remaining == 0) {
    if (!parts_left || *parts_left == 0) out.push_back(OddProfile{current});
    return;
  }
  if (parts_left && *parts_left == 0) return;
  int start = std::min(max_part, remaining);
  if (start % 2 == 0) --start;
  for (int p = start; p >= 1; p -= 2) {
    // prune: parts_left parts of size <= p must be able to reach remaining
    if (parts_left) {
      const int left = *parts_left - 1;
      const int rest = remaining - p;
      if (rest < left || rest > left * p) continue;
    }
    current.push_back(p);
    profiles_rec(remaining - p, p, parts_left ? std::optional<int>(*parts_left - 1) : std::nullopt,
                 current, out);
    current.pop_back();
  }
}

void set_partitions_rec(std::vector<int>& unused, std::vector<std::vector<int>>& blocks,
                        std::vector<LabeledSetPartition>& out) {
  if (unused.empty()) {
    LabeledSetPartition part;
    part.blocks = blocks;
    std::vector<int> sizes;
    sizes.reserve(blocks.size());
    for (const auto& b : blocks) sizes.push_back(static_cast<int>(b.size()));
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    part.profile = OddProfile{sizes};
    out.push_back(std::move(part));
    return;
  }
  const int anchor = unused.front();
  const int m = static_cast<int>(unused.size());
  // choose an odd-sized block containing the smallest unused element
  for (int size = 1; size <= m; size += 2) {
    std::vector<int> pick(size - 1);
    // iterate over (size-1)-subsets of unused[1..] by index combination
    std::vector<int> idx(size - 1);
    std::iota(idx.begin(), idx.end(), 1);
    const auto emit = [&]() {
      std::vector<int> block{anchor};
      for (int i : idx) block.push_back(unused[i]);
      std::vector<int> rest;
      rest.reserve(m - size);
      std::vector<char> taken(m, 0);
      taken[0] = 1;
      for (int i : idx) taken[i] = 1;
      for (int i = 0; i < m; ++i) {
        if (!taken[i]) rest.push_back(unused[i]);
      }
      blocks.push_back(std::move(block));
      set_partitions_rec(rest, blocks, out);
      blocks.pop_back();
    };
    if (size == 1) {
      emit();
      continue;
    }
    while (true) {
      emit();
      int pos = size - 2;
      while (pos >= 0 && idx[pos] == m - (size - 1) + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < size - 1; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

}  // namespace

int OddProfile::n() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

std::string OddProfile::str() const {
  std::string s = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(parts[i]);
  }
  s += ")";
  return s;
}

void validate_profile(const OddProfile& profile) {
  if (profile.parts.empty()) throw std::invalid_argument("empty profile");
  int prev = profile.parts.front();
  for (int p : profile.parts) {
    if (p < 1 || p % 2 == 0) throw std::invalid_argument("profile parts must be odd and >= 1");
    if (p > prev) throw std::invalid_argument("profile parts must be non-increasing");
    prev = p;
  }
  if (profile.n() % 2 == 0) throw std::invalid_argument("profile sum must be odd");
}

std::vector<OddProfile> enumerate_odd_profiles(int n, std::optional<int> k) {
  require_odd(n, 1, "enumerate_odd_profiles");
  if (k) {
    if (*k < 1 || *k > n || (n - *k) % 2 != 0) {
      throw std::invalid_argument("enumerate_odd_profiles: part count " + std::to_string(*k) +
                                  " incompatible with n = " + std::to_string(n));
    }
  }
  std::vector<OddProfile> out;
  std::vector<int> current;
  profiles_rec(n, n, k, current, out);
  return out;
}

long long set_partition_count(const OddProfile& profile) {
  validate_profile(profile);
  long long result = 1;
  int remaining = profile.n();
  for (int p : profile.parts) {
    result = checked_mul(result, binomial(remaining, p, "set_partition_count"),
                         "set_partition_count");
    remaining -= p;
  }
  // divide out the automorphism factor of equal-size blocks
  int run = 1;
  for (size_t i = 1; i <= profile.parts.size(); ++i) {
    if (i < profile.parts.size() && profile.parts[i] == profile.parts[i - 1]) {
      ++run;
      result /= run;  // exact: running division keeps intermediate results integral
    } else {
      run = 1;
    }
  }
  return result;
}

long long multinomial_count(const OddProfile& profile) {
  long long result = set_partition_count(profile);
  int run = 1;
  for (size_t i = 1; i <= profile.parts.size(); ++i) {
    if (i < profile.parts.size() && profile.parts[i] == profile.parts[i - 1]) {
      ++run;
      result = checked_mul(result, run, "multinomial_count");
    } else {
      run = 1;
    }
  }
  return result;
}

std::vector<LabeledSetPartition> enumerate_set_partitions_odd(int n) {
  require_odd(n, 1, "enumerate_set_partitions_odd");
  if (n > kSetPartitionOracleLimit) {
    throw std::invalid_argument("oracle scale exceeded: n = " + std::to_string(n) +
                                " > " + std::to_string(kSetPartitionOracleLimit));
  }
  std::vector<int> elements(n);
  std::iota(elements.begin(), elements.end(), 1);
  std::vector<std::vector<int>> blocks;
  std::vector<LabeledSetPartition> out;
  set_partitions_rec(elements, blocks, out);
  return out;
}

TreeCounts tree_counts(int n) {
  require_odd(n, 3, "tree_counts");
  if (n <= 5) return TreeCounts{1, 1};
  const long long d = n - 3;
  const long long base = (d * d) / 48 + d / 3;
  return TreeCounts{base + 1, base};
}

}  // namespace osp
