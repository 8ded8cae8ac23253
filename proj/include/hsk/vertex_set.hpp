#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hsk {

/// Dynamic bitset over a fixed universe {0, ..., universe-1}.
///
/// All binary operations assume both operands share the same universe.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::size_t universe)
      : words_((universe + 63) / 64, 0), universe_(universe) {}

  std::size_t universe() const { return universe_; }

  void insert(std::size_t v) {
    assert(v < universe_);
    words_[v >> 6] |= std::uint64_t{1} << (v & 63);
  }
  void erase(std::size_t v) {
    assert(v < universe_);
    words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }
  bool contains(std::size_t v) const {
    return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1) != 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  bool intersects(const VertexSet& o) const {
    assert(o.words_.size() == words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & o.words_[i]) != 0) return true;
    return false;
  }
  bool is_subset_of(const VertexSet& o) const {
    assert(o.words_.size() == words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

  VertexSet& operator|=(const VertexSet& o) {
    assert(o.words_.size() == words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    assert(o.words_.size() == words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    assert(o.words_.size() == words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
    return a.words_ <=> b.words_;
  }

  /// Calls f(v) for every member in increasing order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  template <typename T = std::uint32_t>
  std::vector<T> to_vector() const {
    std::vector<T> out;
    for_each([&](std::size_t v) { out.push_back(static_cast<T>(v)); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = universe_;
    for (auto w : words_) h = h * 0x9E3779B97F4A7C15ULL ^ std::hash<std::uint64_t>{}(w + (h >> 7));
    return h;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t universe_ = 0;
};

}  // namespace hsk
