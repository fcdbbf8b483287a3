#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "wedgemeans/errors.hpp"

namespace wedgemeans {

/// Default guard against combinatorial blowup in subset enumerations.
inline constexpr std::uint64_t kDefaultSubsetCap = 100'000'000ULL;

/// binomial(n, k) as an exact integer; saturates at uint64 max on overflow.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(r);
}

/// Strictly increasing k-tuple of 1-based indices into a family of m vectors.
/// Construction sorts its input and rejects duplicates and out-of-range
/// entries. k = 0 (the empty subset) is valid.
class SubsetIndex {
 public:
  SubsetIndex(std::vector<int> indices, int m) : idx_(std::move(indices)) {
    std::sort(idx_.begin(), idx_.end());
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if (idx_[i] < 1 || idx_[i] > m) {
        throw BadShape("SubsetIndex: index " + std::to_string(idx_[i]) +
                       " out of range [1.." + std::to_string(m) + "]");
      }
      if (i > 0 && idx_[i] == idx_[i - 1]) {
        throw BadShape("SubsetIndex: duplicate index " + std::to_string(idx_[i]));
      }
    }
  }

  int size() const { return static_cast<int>(idx_.size()); }
  const std::vector<int>& indices() const { return idx_; }
  int operator[](int i) const { return idx_[i]; }

  bool operator==(const SubsetIndex& other) const { return idx_ == other.idx_; }

 private:
  std::vector<int> idx_;
};

/// Streams all k-subsets of {1..m} in lexicographic order. Construction
/// fails with CapExceeded when binomial(m, k) > cap.
class SubsetEnumerator {
 public:
  SubsetEnumerator(int m, int k, std::uint64_t cap = kDefaultSubsetCap)
      : m_(m), k_(k) {
    if (k < 0 || k > m || m < 0) {
      throw BadShape("SubsetEnumerator: need 0 <= k <= m");
    }
    total_ = binomial(m, k);
    if (total_ > cap) {
      throw CapExceeded("SubsetEnumerator: binomial(" + std::to_string(m) + "," +
                            std::to_string(k) + ") = " + std::to_string(total_) +
                            " exceeds cap " + std::to_string(cap),
                        total_);
    }
    current_.resize(k);
    for (int i = 0; i < k; ++i) current_[i] = i + 1;
  }

  std::uint64_t total() const { return total_; }

  /// Next subset in lexicographic order, or nullopt when exhausted.
  std::optional<SubsetIndex> next() {
    if (!advance_pending()) return std::nullopt;
    return SubsetIndex(current_, m_);
  }

  /// Calls fn(const std::vector<int>&) for every subset, reusing one buffer.
  template <class Fn>
  void for_each(Fn&& fn) {
    while (advance_pending()) fn(static_cast<const std::vector<int>&>(current_));
  }

 private:
  bool advance_pending() {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      return true;  // first subset is {1..k} (or empty for k = 0)
    }
    // odometer step
    int i = k_ - 1;
    while (i >= 0 && current_[i] == m_ - (k_ - 1 - i)) --i;
    if (i < 0) {
      done_ = true;
      return false;
    }
    ++current_[i];
    for (int j = i + 1; j < k_; ++j) current_[j] = current_[j - 1] + 1;
    return true;
  }

  int m_;
  int k_;
  std::uint64_t total_;
  std::vector<int> current_;
  bool started_ = false;
  bool done_ = false;
};

/// Convenience driver: fn receives each k-subset of {1..m} as a sorted
/// 1-based index buffer that is reused between calls.
template <class Fn>
inline void for_each_subset(int m, int k, Fn&& fn,
                            std::uint64_t cap = kDefaultSubsetCap) {
  SubsetEnumerator e(m, k, cap);
  e.for_each(fn);
}

}  // namespace wedgemeans
