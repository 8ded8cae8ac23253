#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace hsk {

/// Visits every subset of `items` of size 0..max_size, ordered by size and
/// then lexicographically by position. The visitor gets the chosen positions
/// and returns true to stop early. Returns true iff the visitor stopped.
template <typename Visitor>
bool for_each_subset_up_to(std::size_t item_count, std::size_t max_size, Visitor&& visit) {
  std::vector<std::size_t> idx;
  for (std::size_t size = 0; size <= max_size && size <= item_count; ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      if (visit(static_cast<const std::vector<std::size_t>&>(idx))) return true;
      // next combination
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == item_count - size + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return false;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

}  // namespace hsk
