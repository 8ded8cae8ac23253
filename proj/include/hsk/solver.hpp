#pragma once

#include <optional>
#include <vector>

#include "hsk/combinatorics.hpp"
#include "hsk/hypergraph.hpp"

// Brute-force hitting-set oracle. Ground truth for every kernel test, so it
// stays deliberately naive: enumerate candidate sets by size, then
// lexicographically.
//
// The search universe is restricted to vertices that occur in some edge. A
// vertex outside every edge hits nothing, so dropping it from a set X changes
// neither "X hits H" nor "X hits H2"; minimum witnesses and least
// counterexamples therefore never contain such vertices.

namespace hsk {

struct HittingSetAnswer {
  bool exists = false;
  std::optional<std::vector<VertexId>> witness;  // present iff exists
};

/// Minimum hitting set of size <= k, lexicographically least among the
/// minimum ones. An empty edge makes every k infeasible.
inline HittingSetAnswer min_hitting_set(const Hypergraph& h, std::size_t k) {
  for (const auto& e : h.edges())
    if (e.empty()) return {};
  const auto universe = occurring_vertices(h);
  std::vector<VertexSet> edge_sets;
  for (const auto& e : h.edges()) edge_sets.push_back(e.to_set(h.vertex_count()));

  HittingSetAnswer answer;
  VertexSet x(h.vertex_count());
  for_each_subset_up_to(universe.size(), k, [&](const std::vector<std::size_t>& pos) {
    x.clear();
    for (auto p : pos) x.insert(universe[p]);
    for (const auto& e : edge_sets)
      if (!e.intersects(x)) return false;
    std::vector<VertexId> w;
    for (auto p : pos) w.push_back(universe[p]);
    answer.exists = true;
    answer.witness = std::move(w);
    return true;
  });
  return answer;
}

/// Result of comparing the size-<=k hitting sets of two hypergraphs.
struct HittingSetEquivalence {
  bool same = true;
  std::optional<std::vector<VertexId>> counterexample;  // least X hitting exactly one side
  explicit operator bool() const { return same; }
};

/// Checks is_hitting_set(H1,X) == is_hitting_set(H2,X) for all |X| <= k over
/// the vertices occurring in E(H1) ∪ E(H2). Throws on a universe mismatch.
inline HittingSetEquivalence same_size_k_hitting_sets(const Hypergraph& h1, const Hypergraph& h2,
                                                      std::size_t k) {
  detail::require_same_universe(h1, h2);
  const auto n = h1.vertex_count();
  VertexSet occ(n);
  for (const auto* h : {&h1, &h2})
    for (const auto& e : h->edges())
      for (auto v : e) occ.insert(v);
  const auto universe = occ.to_vector<VertexId>();

  std::vector<VertexSet> s1, s2;
  for (const auto& e : h1.edges()) s1.push_back(e.to_set(n));
  for (const auto& e : h2.edges()) s2.push_back(e.to_set(n));
  auto hits = [](const std::vector<VertexSet>& edges, const VertexSet& x) {
    for (const auto& e : edges)
      if (!e.intersects(x)) return false;
    return true;
  };

  HittingSetEquivalence result;
  VertexSet x(n);
  for_each_subset_up_to(universe.size(), k, [&](const std::vector<std::size_t>& pos) {
    x.clear();
    for (auto p : pos) x.insert(universe[p]);
    if (hits(s1, x) == hits(s2, x)) return false;
    std::vector<VertexId> c;
    for (auto p : pos) c.push_back(universe[p]);
    result.same = false;
    result.counterexample = std::move(c);
    return true;
  });
  return result;
}

/// All hitting sets of h of size <= k over its occurring vertices.
inline std::vector<VertexSet> small_hitting_sets(const Hypergraph& h, std::size_t k) {
  const auto n = h.vertex_count();
  const auto universe = occurring_vertices(h);
  std::vector<VertexSet> edge_sets;
  for (const auto& e : h.edges()) edge_sets.push_back(e.to_set(n));
  std::vector<VertexSet> out;
  VertexSet x(n);
  for_each_subset_up_to(universe.size(), k, [&](const std::vector<std::size_t>& pos) {
    x.clear();
    for (auto p : pos) x.insert(universe[p]);
    for (const auto& e : edge_sets)
      if (!e.intersects(x)) return false;
    out.push_back(x);
    return false;
  });
  return out;
}

}  // namespace hsk
