#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsk/hypergraph.hpp"

namespace hsk {

/// SplitMix64 (Steele, Lea, Flood 2014). Fixed so that every implementation
/// reproduces the same random instances:
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform-ish value in [0, bound) by plain modulo reduction.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

/// The ten-edge example hypergraph on vertices a..w.
inline Hypergraph gen_fig1() {
  std::vector<std::string> names;
  for (char ch = 'a'; ch <= 'w'; ++ch) names.emplace_back(1, ch);
  auto id = [](char ch) { return static_cast<VertexId>(ch - 'a'); };
  auto edge = [&](std::string_view s) {
    std::vector<VertexId> vs;
    for (char ch : s) vs.push_back(id(ch));
    return Edge(std::move(vs));
  };
  std::vector<Edge> edges = {
      edge("abcfuvw"), edge("abcgrstm"), edge("abchopqle"), edge("abdioru"), edge("abdjpsv"),
      edge("abdkqtw"), edge("abel"),     edge("abem"),      edge("aben"),    edge("uvw"),
  };
  return Hypergraph(23, std::move(edges), std::move(names));
}

namespace detail {

struct TreeLayout {
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<VertexId>>> paths;  // paths[depth][node] = root..node
};

// Balanced tree with `arity` children per inner node, vertices numbered in
// breadth-first order. Node names: "r", then "r.<child>" with children 1-based.
inline TreeLayout tree_layout(std::size_t arity, std::size_t depth) {
  TreeLayout t;
  t.names.push_back("r");
  t.paths.push_back({{0}});
  for (std::size_t z = 1; z <= depth; ++z) {
    std::vector<std::vector<VertexId>> level;
    for (const auto& parent : t.paths[z - 1]) {
      const std::string pname = t.names[parent.back()];
      for (std::size_t c = 1; c <= arity; ++c) {
        auto path = parent;
        path.push_back(static_cast<VertexId>(t.names.size()));
        t.names.push_back(pname + "." + std::to_string(c));
        level.push_back(std::move(path));
      }
    }
    t.paths.push_back(std::move(level));
  }
  return t;
}

}  // namespace detail

/// H^i for the tree with ell+1 children per node and the given depth: one
/// edge per node at depth i, holding the nodes on its root path. The vertex
/// set is always the whole tree.
inline Hypergraph tree_layer(std::size_t ell, std::size_t depth, std::size_t i) {
  if (ell < 1 || depth < 1) throw std::invalid_argument("tree generator needs l >= 1 and depth >= 1");
  if (i > depth) throw std::invalid_argument("tree layer index exceeds depth");
  auto t = detail::tree_layout(ell + 1, depth);
  std::vector<Edge> edges;
  for (auto& p : t.paths[i]) edges.emplace_back(std::move(p));
  const std::size_t n = t.names.size();
  return Hypergraph(n, std::move(edges), std::move(t.names));
}

/// H^depth: one edge per leaf, (ell+1)^depth edges of size depth+1.
inline Hypergraph gen_tree(std::size_t ell, std::size_t depth) { return tree_layer(ell, depth, depth); }

/// m edges over n unnamed vertices. Each edge: size 1 + below(dmax), then a
/// partial Fisher-Yates shuffle of 0..n-1 picks the members. A duplicate is
/// redrawn up to 64 times and then dropped, so fewer than m edges may result.
inline Hypergraph gen_random(std::size_t n, std::size_t m, std::size_t dmax, std::uint64_t seed) {
  if (n < 1 || dmax < 1 || dmax > n) throw std::invalid_argument("gen_random needs n >= 1 and 1 <= dmax <= n");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  std::vector<VertexId> pool(n);
  for (std::size_t j = 0; j < m; ++j) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::iota(pool.begin(), pool.end(), VertexId{0});
      const std::size_t size = 1 + rng.below(dmax);
      for (std::size_t t = 0; t < size; ++t) std::swap(pool[t], pool[t + rng.below(n - t)]);
      Edge e(std::vector<VertexId>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size)));
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) {
        edges.push_back(std::move(e));
        break;
      }
    }
  }
  return Hypergraph(n, std::move(edges));
}

struct GeneratorSpec {
  enum class Kind { fig1, tree, random };
  Kind kind = Kind::fig1;
  std::size_t ell = 2, depth = 2;                 // tree
  std::size_t n = 10, m = 6, dmax = 3;            // random
  std::uint64_t seed = 1;                         // random
};

inline Hypergraph generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::fig1: return gen_fig1();
    case GeneratorSpec::Kind::tree: return gen_tree(spec.ell, spec.depth);
    case GeneratorSpec::Kind::random: return gen_random(spec.n, spec.m, spec.dmax, spec.seed);
  }
  throw std::invalid_argument("unknown generator kind");
}

}  // namespace hsk
