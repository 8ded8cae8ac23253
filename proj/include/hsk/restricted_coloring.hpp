#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hsk/colorcoding.hpp"
#include "hsk/hypergraph.hpp"
#include "hsk/pseudo.hpp"

// Restricted coloring: given a hypergraph H = (V, E) and a graph G = (U, F)
// whose vertices are partitioned into blocks U_1..U_m, find a proper coloring
// c: U -> V with c[U_i] ∈ E for every block.
//
// Pseudo-cores reduce to it: one block per leaf of T_L^k, holding `copies`
// graph vertices per level. Same-leaf vertices on different levels are
// adjacent, and so are the level-z vertices of two leaves splitting at depth z.

namespace hsk {

using GraphVertex = std::uint32_t;

struct RestrictedColoringInstance {
  Hypergraph hypergraph;
  std::size_t graph_vertex_count = 0;
  std::vector<std::pair<GraphVertex, GraphVertex>> graph_edges;  // u < v, sorted, no duplicates
  std::vector<std::vector<GraphVertex>> blocks;

  /// Throws std::invalid_argument unless the blocks partition U into nonempty
  /// parts and every graph edge joins two distinct vertices of U.
  void validate() const {
    std::vector<char> seen(graph_vertex_count, 0);
    for (const auto& b : blocks) {
      if (b.empty()) throw std::invalid_argument("restricted coloring: empty block");
      for (auto u : b) {
        if (u >= graph_vertex_count) throw std::invalid_argument("restricted coloring: block vertex out of range");
        if (seen[u]++) throw std::invalid_argument("restricted coloring: blocks overlap");
      }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw std::invalid_argument("restricted coloring: blocks do not cover U");
    for (const auto& [u, v] : graph_edges)
      if (u == v || u >= graph_vertex_count || v >= graph_vertex_count)
        throw std::invalid_argument("restricted coloring: bad graph edge");
  }
};

/// Coloring c: U -> V, indexed by graph vertex.
using RestrictedColoring = std::vector<VertexId>;

inline bool is_valid_restricted_coloring(const RestrictedColoringInstance& inst, const RestrictedColoring& c) {
  if (c.size() != inst.graph_vertex_count) return false;
  for (auto v : c)
    if (v >= inst.hypergraph.vertex_count()) return false;
  for (const auto& [u, v] : inst.graph_edges)
    if (c[u] == c[v]) return false;
  for (const auto& b : inst.blocks) {
    std::vector<VertexId> image;
    for (auto u : b) image.push_back(c[u]);
    if (!inst.hypergraph.contains_edge(Edge(std::move(image)))) return false;
  }
  return true;
}

/// How many graph vertices stand for one set S(l, i): d = dimension(H), or
/// the sufficient d - L + 1.
enum class CopyCount { full, reduced };

/// Graph vertex of (leaf, level, copy) in the pseudo-core instance; level and
/// copy are 1-based.
struct PseudoColoringLayout {
  std::size_t levels = 0;
  std::size_t copies = 0;
  GraphVertex vertex(std::size_t leaf, std::size_t level, std::size_t copy) const {
    return static_cast<GraphVertex>((leaf * levels + (level - 1)) * copies + (copy - 1));
  }
};

inline std::size_t pseudo_coloring_copies(const Hypergraph& h, std::size_t L, CopyCount copies) {
  const std::size_t d = dimension(h);
  if (d < 1) throw std::invalid_argument("restricted coloring instance needs dimension >= 1");
  if (copies == CopyCount::full || L > d) return d;
  return d - L + 1;
}

/// The instance whose solutions are the pseudo-sunflowers of level L with
/// core C: hypergraph {e - C | C ⊆ e ∈ E}, one block per leaf, `copies`
/// graph vertices per set S(l, i). Fewer than d - L + 1 copies can lose
/// solutions whose blocks are large.
inline RestrictedColoringInstance build_restricted_coloring_instance(const Hypergraph& h, const Edge& core,
                                                                    std::size_t k, std::size_t L,
                                                                    std::size_t copies) {
  if (k < 1 || L < 1) throw std::invalid_argument("build_restricted_coloring_instance: k and L must be >= 1");
  if (copies < 1) throw std::invalid_argument("build_restricted_coloring_instance: copies must be >= 1");
  const LeveledTree tree(k, L);
  const PseudoColoringLayout layout{L, copies};
  const std::size_t c = layout.copies;
  RestrictedColoringInstance inst{restrict_to_supersets(h, core), tree.leaf_count() * L * c, {}, {}};

  for (std::size_t l = 0; l < tree.leaf_count(); ++l) {
    std::vector<GraphVertex> block;
    for (std::size_t i = 1; i <= L; ++i)
      for (std::size_t x = 1; x <= c; ++x) block.push_back(layout.vertex(l, i, x));
    inst.blocks.push_back(std::move(block));
  }
  auto connect = [&](std::size_t l, std::size_t i, std::size_t m, std::size_t j) {
    for (std::size_t x = 1; x <= c; ++x)
      for (std::size_t y = 1; y <= c; ++y) {
        auto u = layout.vertex(l, i, x), v = layout.vertex(m, j, y);
        inst.graph_edges.emplace_back(std::min(u, v), std::max(u, v));
      }
  };
  for (std::size_t l = 0; l < tree.leaf_count(); ++l) {
    for (std::size_t i = 1; i <= L; ++i)
      for (std::size_t j = i + 1; j <= L; ++j) connect(l, i, l, j);
    for (std::size_t m = l + 1; m < tree.leaf_count(); ++m) {
      const auto z = tree.divergence_depth(l, m);
      connect(l, z, m, z);
    }
  }
  std::sort(inst.graph_edges.begin(), inst.graph_edges.end());
  return inst;
}

inline RestrictedColoringInstance build_restricted_coloring_instance(const Hypergraph& h, const Edge& core,
                                                                    std::size_t k, std::size_t L,
                                                                    CopyCount copies = CopyCount::full) {
  return build_restricted_coloring_instance(h, core, k, L, pseudo_coloring_copies(h, L, copies));
}

/// Reads a pseudo-sunflower off a coloring of the pseudo-core instance:
/// S(l, i) is the image of the level-i vertices of leaf l. The number of
/// copies per set is read off the size of c.
inline PseudoSunflower pseudo_from_coloring(const Edge& core, std::size_t k, std::size_t L,
                                            const RestrictedColoring& c) {
  const LeveledTree tree(k, L);
  const std::size_t sets = tree.leaf_count() * L;
  if (c.empty() || c.size() % sets != 0)
    throw std::invalid_argument("pseudo_from_coloring: coloring size does not match the tree");
  const PseudoColoringLayout layout{L, c.size() / sets};
  PseudoSunflower s{tree, core, {}};
  for (std::size_t l = 0; l < tree.leaf_count(); ++l) {
    std::vector<Edge> row{core};
    for (std::size_t i = 1; i <= L; ++i) {
      std::vector<VertexId> vs;
      for (std::size_t x = 1; x <= layout.copies; ++x) vs.push_back(c.at(layout.vertex(l, i, x)));
      row.emplace_back(std::move(vs));
    }
    s.blocks.push_back(std::move(row));
  }
  return s;
}

struct RestrictedColoringStats {
  std::uint64_t nodes = 0;     // exact search: edge/owner choices tried
  std::uint64_t labelings = 0;  // color coding: label maps d examined
  bool fell_back = false;       // color coding handed over to the exact search
};

namespace detail {

// Exact search over the blocks in order. Graph vertices with the same block
// and the same neighbours are twins; only the set of colors a twin class uses
// matters, and it may hold at most as many colors as the class has members.
// Since every constraint is a disjointness, these sets can be shrunk until
// each color of the block's edge has one owning class and each class without
// an owned color borrows a single one.
class ColoringSearch {
 public:
  explicit ColoringSearch(const RestrictedColoringInstance& inst) : inst_(inst) {
    inst.validate();
    const std::size_t u = inst.graph_vertex_count;
    std::vector<std::vector<GraphVertex>> nbrs(u);
    for (const auto& [a, b] : inst.graph_edges) {
      nbrs[a].push_back(b);
      nbrs[b].push_back(a);
    }
    for (auto& n : nbrs) {
      std::sort(n.begin(), n.end());
      n.erase(std::unique(n.begin(), n.end()), n.end());
    }
    std::vector<std::size_t> class_of(u, 0);
    for (std::size_t bi = 0; bi < inst.blocks.size(); ++bi) {
      std::map<std::vector<GraphVertex>, std::size_t> by_nbrs;
      block_classes_.emplace_back();
      for (auto v : inst.blocks[bi]) {
        auto [it, fresh] = by_nbrs.emplace(nbrs[v], classes_.size());
        if (fresh) {
          classes_.push_back({bi, {}, {}});
          block_classes_.back().push_back(it->second);
        }
        classes_[it->second].members.push_back(v);
        class_of[v] = it->second;
      }
    }
    for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
      for (auto w : nbrs[classes_[ci].members.front()]) classes_[ci].adjacent.push_back(class_of[w]);
      auto& adj = classes_[ci].adjacent;
      std::sort(adj.begin(), adj.end());
      adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
  }

  std::optional<RestrictedColoring> solve(const Hypergraph& h, RestrictedColoringStats* stats) {
    h_ = &h;
    stats_ = stats;
    failed_.clear();
    colors_.assign(classes_.size(), VertexSet(h.vertex_count()));
    forbidden_.assign(classes_.size(), VertexSet(h.vertex_count()));
    if (!block(0)) return std::nullopt;
    RestrictedColoring c(inst_.graph_vertex_count, 0);
    for (std::size_t ci = 0; ci < classes_.size(); ++ci) {
      const auto used = colors_[ci].to_vector<VertexId>();
      const auto& mem = classes_[ci].members;
      for (std::size_t j = 0; j < mem.size(); ++j) c[mem[j]] = used[std::min(j, used.size() - 1)];
    }
    return c;
  }

 private:
  struct TwinClass {
    std::size_t block;
    std::vector<GraphVertex> members;
    std::vector<std::size_t> adjacent;
  };

  // What the blocks from bi on see of the past: their forbidden colors.
  std::vector<std::uint64_t> key(std::size_t bi) const {
    std::vector<std::uint64_t> k{bi};
    for (std::size_t b = bi; b < block_classes_.size(); ++b)
      for (auto ci : block_classes_[b]) k.insert(k.end(), forbidden_[ci].words().begin(), forbidden_[ci].words().end());
    return k;
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (auto w : k) h = (h ^ w) * 0x100000001b3ULL ^ (h >> 29);
      return h;
    }
  };

  bool block(std::size_t bi) {
    if (bi == block_classes_.size()) return true;
    auto k = key(bi);
    if (failed_.count(k)) return false;
    const std::size_t size = inst_.blocks[bi].size();
    for (const auto& e : h_->edges()) {
      if (e.empty() || e.size() > size) continue;
      if (own(bi, e, 0)) return true;
    }
    failed_.insert(std::move(k));
    return false;
  }

  // Gives element j of e to one class of the block.
  bool own(std::size_t bi, const Edge& e, std::size_t j) {
    const auto& cls = block_classes_[bi];
    if (j == e.size()) return borrow(bi, e, 0);
    for (auto ci : cls) {
      if (forbidden_[ci].contains(e[j])) continue;
      if (colors_[ci].count() >= classes_[ci].members.size()) continue;
      if (stats_) ++stats_->nodes;
      colors_[ci].insert(e[j]);
      if (own(bi, e, j + 1)) return true;
      colors_[ci].erase(e[j]);
    }
    return false;
  }

  // Classes of the block that own nothing borrow one element; then checks
  // disjointness inside the block and records what later classes must avoid.
  bool borrow(std::size_t bi, const Edge& e, std::size_t pos) {
    const auto& cls = block_classes_[bi];
    if (pos == cls.size()) return commit(bi);
    const auto ci = cls[pos];
    if (!colors_[ci].empty()) return borrow(bi, e, pos + 1);
    for (auto v : e) {
      if (forbidden_[ci].contains(v)) continue;
      if (stats_) ++stats_->nodes;
      colors_[ci].insert(v);
      if (borrow(bi, e, pos + 1)) return true;
      colors_[ci].erase(v);
    }
    return false;
  }

  bool commit(std::size_t bi) {
    const auto& cls = block_classes_[bi];
    for (auto a : cls)
      for (auto b : classes_[a].adjacent)
        if (classes_[b].block == bi && colors_[a].intersects(colors_[b])) return false;
    std::vector<std::pair<std::size_t, VertexSet>> saved;
    for (auto a : cls)
      for (auto b : classes_[a].adjacent)
        if (classes_[b].block > bi) {
          saved.emplace_back(b, forbidden_[b]);
          forbidden_[b] |= colors_[a];
        }
    const bool ok = block(bi + 1);
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) forbidden_[it->first] = std::move(it->second);
    return ok;
  }

  const RestrictedColoringInstance& inst_;
  std::vector<TwinClass> classes_;
  std::vector<std::vector<std::size_t>> block_classes_;
  const Hypergraph* h_ = nullptr;
  RestrictedColoringStats* stats_ = nullptr;
  std::vector<VertexSet> colors_, forbidden_;
  std::unordered_set<std::vector<std::uint64_t>, KeyHash> failed_;
};

}  // namespace detail

/// Exact solver: deterministic first coloring in block order, or nullopt.
inline std::optional<RestrictedColoring> solve_restricted_coloring_exact(const RestrictedColoringInstance& inst,
                                                                         RestrictedColoringStats* stats = nullptr) {
  detail::ColoringSearch search(inst);
  return search.solve(inst.hypergraph, stats);
}

/// Color-coding solver. Searches label maps d: V -> {1..q} and proper
/// colorings c': U -> {1..q} such that every block i has an edge e_i on which
/// d is injective with d[e_i] = c'[U_i]; then c(u) is the unique vertex of
/// e_i labelled c'(u).
///
/// q = min(|U|, number of usable vertices) suffices: for a solution c, label
/// c[U] bijectively and take c' = d∘c. The labels come from a q-perfect
/// family; when that family is all q^n maps, only one map per renaming of the
/// labels is visited, since renaming d and c' together changes nothing. For
/// fixed d the search for c' is the exact search on the labelled hypergraph.
/// Falls back to the exact solver when |U| > |V|.
inline std::optional<RestrictedColoring> solve_restricted_coloring_color_coded(
    const RestrictedColoringInstance& inst, RestrictedColoringStats* stats = nullptr) {
  inst.validate();
  const auto& h = inst.hypergraph;
  if (inst.graph_vertex_count > h.vertex_count()) {
    if (stats) stats->fell_back = true;
    return solve_restricted_coloring_exact(inst, stats);
  }
  if (inst.blocks.empty()) return RestrictedColoring{};

  std::size_t largest_block = 0;
  for (const auto& b : inst.blocks) largest_block = std::max(largest_block, b.size());
  std::vector<Edge> usable;
  for (const auto& e : h.edges())
    if (!e.empty() && e.size() <= largest_block) usable.push_back(e);
  if (usable.empty()) return std::nullopt;
  std::vector<VertexId> domain;  // vertices d has to label
  for (const auto& e : usable) domain.insert(domain.end(), e.begin(), e.end());
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
  std::vector<std::uint32_t> index_of(h.vertex_count(), 0);
  for (std::uint32_t i = 0; i < domain.size(); ++i) index_of[domain[i]] = i;

  const auto n = static_cast<std::uint32_t>(domain.size());
  const auto q = static_cast<std::uint32_t>(std::min<std::size_t>(inst.graph_vertex_count, n));
  const auto family = coloring_family(n, q, q);

  detail::ColoringSearch search(inst);
  std::vector<std::uint32_t> label(n);  // 0-based labels of the domain

  // One attempt for the current labels.
  auto attempt = [&]() -> std::optional<RestrictedColoring> {
    if (stats) ++stats->labelings;
    std::vector<Edge> images;
    std::vector<const Edge*> source;
    for (const auto& e : usable) {
      std::vector<VertexId> img;
      for (auto v : e) img.push_back(label[index_of[v]]);
      Edge im(img);
      if (im.size() != e.size()) continue;  // d not injective on e
      images.push_back(im);
      source.push_back(&e);
    }
    const Hypergraph labelled(q, images);
    auto cprime = search.solve(labelled, nullptr);
    if (!cprime) return std::nullopt;
    RestrictedColoring c(inst.graph_vertex_count, 0);
    for (const auto& b : inst.blocks) {
      std::vector<VertexId> img;
      for (auto u : b) img.push_back((*cprime)[u]);
      const Edge target(img);
      std::size_t j = 0;
      while (images[j] != target) ++j;
      for (auto u : b)
        for (auto v : *source[j])
          if (label[index_of[v]] == (*cprime)[u]) c[u] = v;
    }
    return c;
  };

  if (family.kind() == ColoringFamily::Kind::exhaustive) {
    // Restricted growth strings: label[i] <= 1 + max of the earlier labels.
    std::optional<RestrictedColoring> found;
    auto walk = [&](auto&& self, std::uint32_t i, std::uint32_t used) -> bool {
      if (i == n) return (found = attempt()).has_value();
      for (std::uint32_t x = 0; x < std::min(used + 1, q); ++x) {
        label[i] = x;
        if (self(self, i + 1, std::max(used, x + 1))) return true;
      }
      return false;
    };
    walk(walk, 0, 0);
    return found;
  }
  for (std::uint64_t i = 0; i < family.size(); ++i) {
    for (std::uint32_t x = 0; x < n; ++x) label[x] = family.color(i, x + 1) - 1;
    if (auto c = attempt()) return c;
  }
  return std::nullopt;
}

enum class ColoringSolver { exact, color_coded };

struct ViaColoringOptions {
  ColoringSolver solver = ColoringSolver::exact;
  CopyCount copies = CopyCount::full;
  // Skip the instance when pseudo_core_ruled_out already settles C. These
  // instances are the hard unsatisfiable ones for a generic solver.
  bool prefilter = true;
};

/// H'_L computed through the restricted-coloring reduction, one instance per
/// candidate core.
inline Hypergraph pseudo_cores_via_restricted_coloring(const Hypergraph& h, std::size_t k, std::size_t L,
                                                       ViaColoringOptions opts = {}) {
  if (k < 1) throw std::invalid_argument("pseudo_cores_via_restricted_coloring: k must be >= 1");
  if (L == 0) return h;
  if (dimension(h) == 0) return h.with_edges({});
  std::vector<Edge> cores;
  for (const auto& c : candidate_cores(h)) {
    if (opts.prefilter && pseudo_core_ruled_out(h, c, k, L)) continue;
    const auto inst = build_restricted_coloring_instance(h, c, k, L, opts.copies);
    const bool ok = opts.solver == ColoringSolver::exact ? solve_restricted_coloring_exact(inst).has_value()
                                                         : solve_restricted_coloring_color_coded(inst).has_value();
    if (ok) cores.push_back(c);
  }
  return h.with_edges(std::move(cores));
}

}  // namespace hsk
