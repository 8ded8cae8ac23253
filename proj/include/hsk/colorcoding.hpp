#pragma once

#include <cstdint>
#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsk/combinatorics.hpp"

// Deterministic k-perfect coloring families.
//
// A family Λ of functions {1..n} -> {1..c} is k-perfect when every k distinct
// elements can receive every prescribed tuple of colors from some member.
//
// Construction (classic derandomized color coding):
//   stage 1: h_a(x) = ((a*x) mod p) mod k^2 for a = 1..p-1, p prime. For each
//            k-set some a is collision free (pairwise counting argument, valid
//            once p - 1 > k^2 (k-1) / 2).
//   stage 2: every assignment of colors to the k^2 buckets.
// When c^n is no larger, the family is simply all c^n functions.
//
// Rows are computed on demand from their index; table(i) materializes one.

namespace hsk {

inline bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

inline std::uint64_t next_prime_above(std::uint64_t x) {
  std::uint64_t p = x + 1;
  while (!is_prime(p)) ++p;
  return p;
}

/// Stage-1 hash family on {1..n} into k^2 buckets, injective on every k-set
/// for at least one member.
class PerfectHashFamily {
 public:
  PerfectHashFamily(std::uint64_t n, std::uint64_t k) : n_(n), k_(k) {
    if (k == 0) throw std::invalid_argument("PerfectHashFamily: k must be >= 1");
    const std::uint64_t collision_floor = k * k * (k - 1) / 2 + 1;
    p_ = next_prime_above(std::max(n, collision_floor));
    range_ = k * k;
  }

  std::uint64_t size() const { return p_ - 1; }
  std::uint64_t prime() const { return p_; }
  std::uint64_t range() const { return range_; }
  std::uint64_t n() const { return n_; }
  std::uint64_t k() const { return k_; }

  /// Bucket in [0, k^2) of element x in 1..n under member i in [0, size()).
  std::uint64_t bucket(std::uint64_t i, std::uint64_t x) const { return ((i + 1) * x % p_) % range_; }

 private:
  std::uint64_t n_, k_, p_, range_;
};

class ColoringFamily {
 public:
  enum class Kind { exhaustive, hashed, explicit_tables };

  /// All c^n functions.
  static ColoringFamily exhaustive(std::uint32_t n, std::uint32_t c) {
    ColoringFamily f(Kind::exhaustive, n, n, c);
    const auto total = saturating_pow(c, n);
    if (total == std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("coloring family of " + std::to_string(c) + "^" + std::to_string(n) + " functions is too large");
    f.size_ = total;
    f.init_powers(n);
    return f;
  }

  /// Explicit function tables; every row must have n entries in 1..c.
  static ColoringFamily from_tables(std::uint32_t n, std::uint32_t k, std::uint32_t c,
                                    std::vector<std::vector<std::uint32_t>> tables) {
    for (const auto& t : tables) {
      if (t.size() != n) throw std::invalid_argument("coloring table has wrong length");
      for (auto v : t)
        if (v < 1 || v > c) throw std::invalid_argument("coloring table color out of range");
    }
    ColoringFamily f(Kind::explicit_tables, n, k, c);
    f.size_ = tables.size();
    f.tables_ = std::move(tables);
    return f;
  }

  /// Two-stage hashed family (no fallback check).
  static ColoringFamily hashed(std::uint32_t n, std::uint32_t k, std::uint32_t c) {
    ColoringFamily f(Kind::hashed, n, k, c);
    f.hash_ = PerfectHashFamily(n, k);
    f.block_ = saturating_pow(c, std::uint64_t{k} * k);
    f.size_ = saturating_mul(f.hash_->size(), f.block_);
    if (f.size_ == std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("hashed coloring family is too large");
    f.init_powers(k * k);
    return f;
  }

  Kind kind() const { return kind_; }
  std::uint32_t n() const { return n_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t c() const { return c_; }
  std::uint64_t size() const { return size_; }

  /// Color in 1..c of element x in 1..n under member i in [0, size()).
  std::uint32_t color(std::uint64_t i, std::uint32_t x) const {
    switch (kind_) {
      case Kind::exhaustive:
        return static_cast<std::uint32_t>(i / pow_[x - 1] % c_) + 1;
      case Kind::hashed: {
        const auto a = i / block_;
        const auto b = i % block_;
        const auto bucket = hash_->bucket(a, x);
        return static_cast<std::uint32_t>(b / pow_[bucket] % c_) + 1;
      }
      case Kind::explicit_tables:
        return tables_[i][x - 1];
    }
    return 0;
  }

  /// Function table of member i: entry j is the color of element j+1.
  std::vector<std::uint32_t> table(std::uint64_t i) const {
    std::vector<std::uint32_t> t(n_);
    for (std::uint32_t x = 1; x <= n_; ++x) t[x - 1] = color(i, x);
    return t;
  }

 private:
  ColoringFamily(Kind kind, std::uint32_t n, std::uint32_t k, std::uint32_t c)
      : kind_(kind), n_(n), k_(k), c_(c), hash_(std::nullopt) {}

  void init_powers(std::uint64_t digits) {
    pow_.assign(digits, 1);
    for (std::uint64_t j = 1; j < digits; ++j) pow_[j] = pow_[j - 1] * c_;
  }

  Kind kind_;
  std::uint32_t n_, k_, c_;
  std::uint64_t size_ = 0;
  std::uint64_t block_ = 1;
  std::optional<PerfectHashFamily> hash_;
  std::vector<std::uint64_t> pow_;
  std::vector<std::vector<std::uint32_t>> tables_;
};

/// A k-perfect family on {1..n} with colors {1..c}: the hashed construction,
/// or all c^n functions when that is no larger. Deterministic in (n, k, c).
inline ColoringFamily coloring_family(std::uint32_t n, std::uint32_t k, std::uint32_t c) {
  if (n < 1 || k < 1 || c < 1) throw std::invalid_argument("coloring_family: n, k, c must be >= 1");
  if (k > n) throw std::invalid_argument("coloring_family: k must not exceed n");
  const auto all = saturating_pow(c, n);
  const auto hashed_size = saturating_mul(PerfectHashFamily(n, k).size(), saturating_pow(c, std::uint64_t{k} * k));
  if (all <= hashed_size) return ColoringFamily::exhaustive(n, c);
  return ColoringFamily::hashed(n, k, c);
}

struct KPerfectResult {
  bool perfect = true;
  std::vector<std::uint32_t> elements;  // least violating x_1 < ... < x_k (1-based)
  std::vector<std::uint32_t> targets;   // least unreachable color tuple for them
  explicit operator bool() const { return perfect; }
};

/// Exhaustive check of k'-perfectness: every k'-subset of {1..n} in
/// lexicographic order, then every target tuple in lexicographic order.
inline KPerfectResult check_k_perfect(const ColoringFamily& f, std::uint32_t kprime) {
  const std::uint32_t n = f.n(), c = f.c();
  if (kprime == 0 || kprime > n) return {};
  const auto targets_total = saturating_pow(c, kprime);
  if (targets_total > (std::uint64_t{1} << 32)) throw std::overflow_error("too many target tuples to check");

  std::vector<char> reached(targets_total);
  std::vector<std::uint32_t> xs(kprime);
  KPerfectResult result;
  for_each_subset_up_to(n, kprime, [&](const std::vector<std::size_t>& pos) {
    if (pos.size() != kprime) return false;
    for (std::uint32_t j = 0; j < kprime; ++j) xs[j] = static_cast<std::uint32_t>(pos[j]) + 1;
    std::fill(reached.begin(), reached.end(), 0);
    std::uint64_t missing = targets_total;
    for (std::uint64_t i = 0; i < f.size() && missing > 0; ++i) {
      std::uint64_t code = 0;  // x_1's color is the most significant digit
      for (std::uint32_t j = 0; j < kprime; ++j) code = code * c + (f.color(i, xs[j]) - 1);
      if (!reached[code]) {
        reached[code] = 1;
        --missing;
      }
    }
    if (missing == 0) return false;
    std::uint64_t code = 0;
    while (reached[code]) ++code;
    result.perfect = false;
    result.elements = xs;
    result.targets.assign(kprime, 0);
    for (std::uint32_t j = kprime; j-- > 0;) {
      result.targets[j] = static_cast<std::uint32_t>(code % c) + 1;
      code /= c;
    }
    return true;
  });
  return result;
}

inline KPerfectResult is_k_perfect(const ColoringFamily& f) { return check_k_perfect(f, f.k()); }

}  // namespace hsk
