#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace defsum {

/// Streaming pairwise summation. Terms are merged like a binary counter, so
/// the result depends only on the sequence of terms, never on timing.
template <class T>
class PairwiseAccumulator {
 public:
  void add(const T& x) {
    levels_.push_back({x, 1});
    while (levels_.size() >= 2 && levels_[levels_.size() - 1].second == levels_[levels_.size() - 2].second) {
      auto top = levels_.back();
      levels_.pop_back();
      levels_.back().first += top.first;
      levels_.back().second += top.second;
    }
  }

  T total() const {
    T acc{};
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) acc = it->first + acc;
    return acc;
  }

 private:
  std::vector<std::pair<T, std::uint64_t>> levels_;
};

/// Balanced pairwise sum of values[lo, hi).
template <class T>
T pairwise_sum(const std::vector<T>& values, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return T{};
  if (hi - lo == 1) return values[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(values, lo, mid) + pairwise_sum(values, mid, hi);
}

template <class T>
T pairwise_sum(const std::vector<T>& values) {
  return pairwise_sum(values, 0, values.size());
}

}  // namespace defsum
