#pragma once
// Seeded instance generators and deliberately naive oracles shared by the
// test binaries. The oracles reimplement definitions straight from the math
// with no pruning, so they stay independent of the library code they check.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hsk/generators.hpp"
#include "hsk/hypergraph.hpp"
#include "hsk/pseudo.hpp"
#include "hsk/restricted_coloring.hpp"

namespace hsk::testkit {

/// A random hitting-set instance within the desk-scale bounds used by the
/// property suites: n <= 12, m <= 8, edge size <= 4, k <= 3.
struct RandomCase {
  std::uint64_t seed = 0;
  Hypergraph h;
  std::size_t k = 1;
};

inline RandomCase random_case(std::uint64_t seed) {
  SplitMix64 r(seed * 0x2545F4914F6CDD1DULL + 17);
  const std::size_t n = 4 + r.below(9);             // 4..12
  const std::size_t m = 1 + r.below(8);             // 1..8
  const std::size_t dmax = 1 + r.below(std::min<std::size_t>(4, n));
  const std::size_t k = 1 + r.below(3);             // 1..3
  return {seed, gen_random(n, m, dmax, r.next()), k};
}

inline std::vector<RandomCase> random_cases(std::size_t count, std::uint64_t first_seed = 1) {
  std::vector<RandomCase> out;
  for (std::uint64_t s = first_seed; s < first_seed + count; ++s) out.push_back(random_case(s));
  return out;
}

/// Random restricted-coloring instance: |V| in 3..10, |U| <= min(8, |V|),
/// at most 3 blocks, each graph edge present with probability 0.3.
inline RestrictedColoringInstance random_coloring_instance(std::uint64_t seed) {
  SplitMix64 r(seed);
  const std::size_t nv = 3 + r.below(8);
  const std::size_t ne = 1 + r.below(5);
  auto h = gen_random(nv, ne, std::min<std::size_t>(3, nv), seed ^ 0xabc);
  const std::size_t u = 1 + r.below(std::min<std::size_t>(8, nv));
  const std::size_t m = 1 + r.below(std::min<std::size_t>(3, u));
  RestrictedColoringInstance inst{std::move(h), u, {}, {}};
  inst.blocks.assign(m, {});
  for (GraphVertex x = 0; x < u; ++x) inst.blocks[x < m ? x : r.below(m)].push_back(x);
  for (GraphVertex a = 0; a < u; ++a)
    for (GraphVertex b = a + 1; b < u; ++b)
      if (r.below(10) < 3) inst.graph_edges.emplace_back(a, b);
  return inst;
}

// ---------------------------------------------------------------- oracles

inline std::vector<std::uint64_t> edge_masks(const Hypergraph& h) {
  std::vector<std::uint64_t> out;
  for (const auto& e : h.edges()) {
    std::uint64_t m = 0;
    for (auto v : e) m |= std::uint64_t{1} << v;
    out.push_back(m);
  }
  return out;
}

inline Edge edge_of_mask(std::uint64_t m) {
  std::vector<VertexId> vs;
  for (VertexId v = 0; v < 64; ++v)
    if (m >> v & 1) vs.push_back(v);
  return Edge(std::move(vs));
}

/// C is a k-core iff some k+1 edges properly contain C and pairwise meet in
/// exactly C. Tries every (k+1)-subset of edges.
inline bool brute_is_k_core(const Hypergraph& h, std::uint64_t core, std::size_t k) {
  std::vector<std::uint64_t> sup;
  for (auto e : edge_masks(h))
    if ((e & core) == core && e != core) sup.push_back(e);
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> go = [&](std::size_t from) {
    if (pick.size() == k + 1) return true;
    for (std::size_t i = from; i < sup.size(); ++i) {
      bool fine = true;
      for (auto j : pick) fine = fine && (sup[i] & sup[j]) == core;
      if (!fine) continue;
      pick.push_back(i);
      if (go(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return go(0);
}

/// All k-cores, candidates being every subset of every edge.
inline std::set<std::uint64_t> brute_k_cores(const Hypergraph& h, std::size_t k) {
  std::set<std::uint64_t> cand, out;
  for (auto e : edge_masks(h))
    for (std::uint64_t s = e;; s = (s - 1) & e) {
      cand.insert(s);
      if (s == 0) break;
    }
  for (auto c : cand)
    if (brute_is_k_core(h, c, k)) out.insert(c);
  return out;
}

inline std::set<std::uint64_t> mask_set(const Hypergraph& h) {
  const auto m = edge_masks(h);
  return {m.begin(), m.end()};
}

/// Compares the hitting sets of size <= k over all vertex masks (n <= 24).
inline bool brute_same_hitting_sets(const Hypergraph& a, const Hypergraph& b, std::size_t k) {
  const auto ea = edge_masks(a), eb = edge_masks(b);
  const std::size_t n = std::max(a.vertex_count(), b.vertex_count());
  auto hits = [](const std::vector<std::uint64_t>& es, std::uint64_t x) {
    return std::all_of(es.begin(), es.end(), [x](std::uint64_t e) { return (e & x) != 0; });
  };
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
    if (static_cast<std::size_t>(std::popcount(x)) <= k && hits(ea, x) != hits(eb, x)) return false;
  return true;
}

/// Tries every map U -> V. Only for |V|^|U| in the low millions.
inline bool brute_restricted_coloring(const RestrictedColoringInstance& inst) {
  const std::size_t u = inst.graph_vertex_count;
  const std::size_t nv = inst.hypergraph.vertex_count();
  RestrictedColoring c(u, 0);
  while (true) {
    if (is_valid_restricted_coloring(inst, c)) return true;
    std::size_t i = 0;
    while (i < u && ++c[i] == nv) c[i++] = 0;
    if (i == u) return false;
  }
}

/// Pseudo-core test by enumerating every assignment of (edge, ordered
/// partition of its residual) to each leaf, checked with the verifier.
/// Feasible only for (k+1)^L leaves of a handful of options each.
inline bool brute_is_pseudo_core(const Hypergraph& h, const Edge& core, std::size_t k, std::size_t L) {
  const LeveledTree tree(k, L);
  std::vector<std::vector<Edge>> options;  // one row S(l,0..L) per option
  for (const auto& e : h.edges()) {
    if (e.size() <= core.size() || !std::includes(e.begin(), e.end(), core.begin(), core.end())) continue;
    std::vector<VertexId> rest;
    std::set_difference(e.begin(), e.end(), core.begin(), core.end(), std::back_inserter(rest));
    if (rest.size() < L) continue;
    std::vector<std::size_t> level(rest.size(), 0);
    while (true) {
      std::vector<std::vector<VertexId>> blocks(L);
      for (std::size_t j = 0; j < rest.size(); ++j) blocks[level[j]].push_back(rest[j]);
      if (std::none_of(blocks.begin(), blocks.end(), [](const auto& b) { return b.empty(); })) {
        std::vector<Edge> row{core};
        for (auto& b : blocks) row.emplace_back(std::move(b));
        options.push_back(std::move(row));
      }
      std::size_t j = 0;
      while (j < rest.size() && ++level[j] == L) level[j++] = 0;
      if (j == rest.size()) break;
    }
  }
  if (options.empty()) return false;
  const std::size_t leaves = tree.leaf_count();
  std::vector<std::size_t> pick(leaves, 0);
  PseudoSunflower s{tree, core, std::vector<std::vector<Edge>>(leaves)};
  while (true) {
    for (std::size_t l = 0; l < leaves; ++l) s.blocks[l] = options[pick[l]];
    if (verify_pseudo_sunflower(h, s)) return true;
    std::size_t l = 0;
    while (l < leaves && ++pick[l] == options.size()) pick[l++] = 0;
    if (l == leaves) return false;
  }
}

}  // namespace hsk::testkit
