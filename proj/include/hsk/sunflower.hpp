#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hsk/colorcoding.hpp"
#include "hsk/hypergraph.hpp"

namespace hsk {

/// A core together with its petals. Petals must be proper supersets of the
/// core whose pairwise intersections all equal the core.
struct Sunflower {
  Edge core;
  std::vector<Edge> petals;
};

inline bool verify_sunflower(const Sunflower& s) {
  if (s.petals.empty()) return false;
  for (std::size_t i = 0; i < s.petals.size(); ++i) {
    if (!s.core.is_proper_subset_of(s.petals[i])) return false;
    for (std::size_t j = i + 1; j < s.petals.size(); ++j)
      if (s.petals[i].intersected(s.petals[j]) != s.core) return false;
  }
  return true;
}

namespace detail {

// Residuals e - C of the edges e ⊋ C, in canonical order of e.
struct Residuals {
  std::vector<const Edge*> edges;
  std::vector<VertexSet> sets;
};

inline Residuals residuals_over(const Hypergraph& h, const Edge& core) {
  Residuals r;
  for (const auto& e : h.edges()) {
    if (!core.is_proper_subset_of(e)) continue;
    r.edges.push_back(&e);
    r.sets.push_back(e.minus(core).to_set(h.vertex_count()));
  }
  return r;
}

// Keeps only inclusion-minimal sets (first occurrence of duplicates).
inline std::vector<VertexSet> inclusion_minimal(std::vector<VertexSet> sets) {
  std::sort(sets.begin(), sets.end(),
            [](const VertexSet& a, const VertexSet& b) { return a.count() < b.count(); });
  std::vector<VertexSet> out;
  for (auto& s : sets) {
    bool dominated = std::any_of(out.begin(), out.end(), [&](const VertexSet& m) { return m.is_subset_of(s); });
    if (!dominated) out.push_back(std::move(s));
  }
  return out;
}

// Depth-first packing: picks `need` pairwise disjoint sets, smallest indices
// first, so the first success is the lexicographically least index tuple.
inline bool pack_disjoint(const std::vector<VertexSet>& sets, std::size_t need, std::size_t from,
                          VertexSet& used, std::vector<std::size_t>& chosen) {
  if (need == 0) return true;
  for (std::size_t i = from; i + need <= sets.size(); ++i) {
    if (sets[i].intersects(used)) continue;
    used |= sets[i];
    chosen.push_back(i);
    if (pack_disjoint(sets, need - 1, i + 1, used, chosen)) return true;
    chosen.pop_back();
    used -= sets[i];
  }
  return false;
}

inline bool has_sunflower_with_core(const Hypergraph& h, const Edge& core, std::size_t count) {
  auto mins = inclusion_minimal(residuals_over(h, core).sets);
  if (mins.size() < count) return false;
  VertexSet used(h.vertex_count());
  std::vector<std::size_t> chosen;
  return pack_disjoint(mins, count, 0, used, chosen);
}

}  // namespace detail

/// Sunflower in h with core exactly `core` and exactly `count` petals, the
/// lexicographically least petal tuple in canonical edge order; nullopt if
/// none exists. Throws std::invalid_argument when count == 0.
inline std::optional<Sunflower> find_sunflower(const Hypergraph& h, const Edge& core, std::size_t count) {
  if (count == 0) throw std::invalid_argument("find_sunflower: count must be >= 1");
  auto r = detail::residuals_over(h, core);
  if (r.sets.size() < count) return std::nullopt;
  VertexSet used(h.vertex_count());
  std::vector<std::size_t> chosen;
  if (!detail::pack_disjoint(r.sets, count, 0, used, chosen)) return std::nullopt;
  Sunflower s{core, {}};
  for (auto i : chosen) s.petals.push_back(*r.edges[i]);
  return s;
}

/// Every proper subset of every edge, canonical order. A core is a proper
/// subset of each of its petals, so these are all the k-core candidates.
inline std::vector<Edge> candidate_cores(const Hypergraph& h) {
  std::vector<Edge> out;
  for (const auto& e : h.edges()) {
    if (e.size() >= 31) throw std::length_error("candidate_cores: edge too large to enumerate");
    const std::uint32_t full = (std::uint32_t{1} << e.size()) - 1;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      std::vector<VertexId> vs;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (mask >> i & 1) vs.push_back(e[i]);
      out.emplace_back(std::move(vs));
    }
  }
  return canonical_edges(std::move(out));
}

/// Counters filled in by the core operators: candidates examined and, for the
/// color-coded variant, colorings evaluated.
struct CoreStats {
  std::uint64_t candidates = 0;
  std::uint64_t colorings = 0;
};

/// All k-cores of h: cores of sunflowers with at least k+1 petals.
inline Hypergraph k_cores(const Hypergraph& h, std::size_t k, CoreStats* stats = nullptr) {
  if (k == 0) throw std::invalid_argument("k_cores: k must be >= 1");
  std::vector<Edge> cores;
  for (const auto& c : candidate_cores(h)) {
    if (stats) ++stats->candidates;
    if (detail::has_sunflower_with_core(h, c, k + 1)) cores.push_back(c);
  }
  return h.with_edges(std::move(cores));
}

namespace detail {

// Color-coded core test. Only inclusion-minimal residuals matter (a sunflower
// with petals p_j yields one on minimal residuals inside each p_j - C).
// Vertices that lie in a single minimal residual never cause a conflict, so
// they take the color of their residual implicitly; only vertices shared by
// two or more minimal residuals are colored by the family. A residual with no
// shared vertex is free and can serve any color.
inline bool color_coded_core_test(const Hypergraph& h, const Edge& core, std::size_t k, CoreStats* stats) {
  const std::size_t colors = k + 1;
  auto mins = inclusion_minimal(residuals_over(h, core).sets);
  if (mins.size() < colors) return false;

  // Group shared vertices by the set of minimal residuals containing them.
  // Such twins share every residual, so a monochromatic residual colors them
  // alike anyway; the family colors one representative per group.
  const std::size_t n = h.vertex_count();
  std::vector<std::vector<bool>> signature(n, std::vector<bool>(mins.size(), false));
  std::vector<std::uint32_t> multiplicity(n, 0);
  for (std::size_t r = 0; r < mins.size(); ++r)
    mins[r].for_each([&](std::size_t v) {
      signature[v][r] = true;
      ++multiplicity[v];
    });
  std::vector<std::vector<bool>> groups;
  for (VertexId v = 0; v < n; ++v)
    if (multiplicity[v] >= 2 && std::find(groups.begin(), groups.end(), signature[v]) == groups.end())
      groups.push_back(signature[v]);

  std::size_t free_count = 0;
  std::vector<std::vector<std::uint32_t>> bound;  // group positions of each non-free residual
  for (std::size_t r = 0; r < mins.size(); ++r) {
    std::vector<std::uint32_t> pos;
    for (std::uint32_t g = 0; g < groups.size(); ++g)
      if (groups[g][r]) pos.push_back(g);
    if (pos.empty()) ++free_count; else bound.push_back(std::move(pos));
  }
  if (free_count >= colors) return true;
  if (bound.empty()) return false;

  // Elements "in mind" are the groups met by k+1 petals: at most the sum of
  // the k+1 largest group counts.
  std::vector<std::size_t> sizes;
  for (const auto& pos : bound) sizes.push_back(pos.size());
  std::sort(sizes.rbegin(), sizes.rend());
  std::size_t support = 0;
  for (std::size_t i = 0; i < sizes.size() && i < colors; ++i) support += sizes[i];
  support = std::min(support, groups.size());
  const auto family = coloring_family(groups.size(), support, colors);

  std::vector<char> covered(colors + 1);
  for (std::uint64_t i = 0; i < family.size(); ++i) {
    if (stats) ++stats->colorings;
    std::fill(covered.begin(), covered.end(), 0);
    std::size_t hit = 0;
    for (const auto& pos : bound) {
      const auto c0 = family.color(i, pos[0] + 1);
      if (covered[c0]) continue;
      bool mono = true;
      for (std::size_t j = 1; j < pos.size() && mono; ++j) mono = family.color(i, pos[j] + 1) == c0;
      if (mono) {
        covered[c0] = 1;
        if (++hit + free_count >= colors) return true;
      }
    }
  }
  return false;
}

}  // namespace detail

/// Same edge set as k_cores, decided per candidate with a k-perfect coloring
/// family over {1..k+1}: accept when some coloring has, for every color j, a
/// residual colored entirely j.
inline Hypergraph k_cores_color_coded(const Hypergraph& h, std::size_t k, CoreStats* stats = nullptr) {
  if (k == 0) throw std::invalid_argument("k_cores_color_coded: k must be >= 1");
  std::vector<Edge> cores;
  for (const auto& c : candidate_cores(h)) {
    if (stats) ++stats->candidates;
    if (detail::color_coded_core_test(h, c, k, stats)) cores.push_back(c);
  }
  return h.with_edges(std::move(cores));
}

struct SequentialResult {
  Hypergraph kernel;
  std::uint64_t steps = 0;  // reduction rule applications
  std::uint64_t work = 0;   // candidate cores tested
};

/// Classic reduction loop: replace the first sunflower with k+1 petals (first
/// core in canonical order, least petal tuple) by its core until none is left.
/// An empty edge makes the instance a trivial no-instance, which is kept as {∅}.
inline SequentialResult sequential_kernel_report(const Hypergraph& h, std::size_t k) {
  if (k == 0) throw std::invalid_argument("sequential_kernel: k must be >= 1");
  SequentialResult res{h, 0, 0};
  while (true) {
    const auto& edges = res.kernel.edges();
    if (!edges.empty() && edges.front().empty()) {
      if (edges.size() > 1) {
        res.kernel = res.kernel.with_edges({Edge{}});
        ++res.steps;
      }
      return res;
    }
    std::optional<Sunflower> found;
    for (const auto& c : candidate_cores(res.kernel)) {
      ++res.work;
      if ((found = find_sunflower(res.kernel, c, k + 1))) break;
    }
    if (!found) return res;
    std::vector<Edge> next;
    for (const auto& e : res.kernel.edges())
      if (std::find(found->petals.begin(), found->petals.end(), e) == found->petals.end()) next.push_back(e);
    next.push_back(found->core);
    res.kernel = res.kernel.with_edges(std::move(next));
    ++res.steps;
  }
}

inline Hypergraph sequential_kernel(const Hypergraph& h, std::size_t k) {
  return sequential_kernel_report(h, k).kernel;
}

}  // namespace hsk
