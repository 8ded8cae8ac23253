#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hsk/vertex_set.hpp"

namespace hsk {

using VertexId = std::uint32_t;

/// A hyperedge: a strictly increasing sequence of vertex ids. May be empty.
///
/// Ordering is lexicographic on the sorted sequences, which is the canonical
/// edge order used everywhere (serialization, candidate enumeration, tie
/// breaking).
class Edge {
 public:
  Edge() = default;
  explicit Edge(std::vector<VertexId> vertices) : v_(std::move(vertices)) {
    std::sort(v_.begin(), v_.end());
    v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
  }
  Edge(std::initializer_list<VertexId> vertices) : Edge(std::vector<VertexId>(vertices)) {}

  static Edge from_set(const VertexSet& s) { return Edge(s.to_vector<VertexId>()); }

  std::span<const VertexId> vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  VertexId operator[](std::size_t i) const { return v_[i]; }
  VertexId max_vertex() const { return v_.back(); }

  bool contains(VertexId v) const { return std::binary_search(v_.begin(), v_.end(), v); }
  bool is_subset_of(const Edge& o) const {
    return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end());
  }
  bool is_proper_subset_of(const Edge& o) const { return size() < o.size() && is_subset_of(o); }
  bool intersects(const Edge& o) const {
    auto a = v_.begin();
    auto b = o.v_.begin();
    while (a != v_.end() && b != o.v_.end()) {
      if (*a == *b) return true;
      if (*a < *b) ++a; else ++b;
    }
    return false;
  }
  bool intersects(const VertexSet& s) const {
    return std::any_of(v_.begin(), v_.end(), [&](VertexId v) { return s.contains(v); });
  }

  Edge minus(const Edge& o) const {
    Edge out;
    std::set_difference(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(out.v_));
    return out;
  }
  Edge united(const Edge& o) const {
    Edge out;
    std::set_union(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(out.v_));
    return out;
  }
  Edge intersected(const Edge& o) const {
    Edge out;
    std::set_intersection(v_.begin(), v_.end(), o.v_.begin(), o.v_.end(), std::back_inserter(out.v_));
    return out;
  }

  VertexSet to_set(std::size_t universe) const {
    VertexSet s(universe);
    for (auto v : v_) s.insert(v);
    return s;
  }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& a, const Edge& b) { return a.v_ <=> b.v_; }

 private:
  std::vector<VertexId> v_;
};

/// Sorts and deduplicates a list of edges into canonical order.
inline std::vector<Edge> canonical_edges(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

/// H = (V, E) with V = {0, ..., n-1}, an optional display-name table and a
/// canonically ordered, duplicate-free edge set. Immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Throws std::invalid_argument if an edge mentions a vertex >= n, or if
  /// names are given but are not n distinct, non-empty, whitespace-free tokens.
  explicit Hypergraph(std::size_t n, std::vector<Edge> edges = {},
                      std::vector<std::string> names = {})
      : n_(n), edges_(canonical_edges(std::move(edges))), names_(std::move(names)) {
    for (const auto& e : edges_)
      if (!e.empty() && e.max_vertex() >= n_)
        throw std::invalid_argument("edge vertex out of range");
    if (!names_.empty()) {
      if (names_.size() != n_) throw std::invalid_argument("name table size differs from vertex count");
      std::unordered_map<std::string_view, VertexId> seen;
      for (VertexId i = 0; i < n_; ++i) {
        const auto& s = names_[i];
        if (s.empty() || s.find_first_of(" \t\r\n") != std::string::npos || s[0] == '#')
          throw std::invalid_argument("invalid vertex name '" + s + "'");
        if (!seen.emplace(s, i).second) throw std::invalid_argument("duplicate vertex name '" + s + "'");
      }
    }
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_names() const { return !names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }

  /// Display name: the stored name, or "v<i>" for unnamed hypergraphs.
  std::string name(VertexId v) const {
    if (!names_.empty()) return names_.at(v);
    return "v" + std::to_string(v);
  }

  std::optional<VertexId> find_vertex(std::string_view token) const {
    for (VertexId i = 0; i < n_; ++i)
      if (name(i) == token) return i;
    return std::nullopt;
  }

  bool contains_edge(const Edge& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  /// Same universe and names, different edge set.
  Hypergraph with_edges(std::vector<Edge> edges) const {
    Hypergraph h;
    h.n_ = n_;
    h.names_ = names_;
    h.edges_ = canonical_edges(std::move(edges));
    for (const auto& e : h.edges_)
      if (!e.empty() && e.max_vertex() >= n_) throw std::invalid_argument("edge vertex out of range");
    return h;
  }

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    if (a.n_ != b.n_ || a.edges_ != b.edges_) return false;
    for (VertexId i = 0; i < a.n_; ++i)
      if (a.name(i) != b.name(i)) return false;
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::string> names_;
};

namespace detail {
inline void require_same_universe(const Hypergraph& a, const Hypergraph& b) {
  if (a.vertex_count() != b.vertex_count())
    throw std::invalid_argument("hypergraphs have different vertex universes");
}
}  // namespace detail

/// d(H): the largest edge cardinality, 0 for E = {} or E = {{}}.
inline std::size_t dimension(const Hypergraph& h) {
  std::size_t d = 0;
  for (const auto& e : h.edges()) d = std::max(d, e.size());
  return d;
}

inline bool is_hitting_set(const Hypergraph& h, const VertexSet& x) {
  if (x.universe() != h.vertex_count()) throw std::invalid_argument("vertex set universe mismatch");
  return std::all_of(h.edges().begin(), h.edges().end(),
                     [&](const Edge& e) { return e.intersects(x); });
}

/// Throws std::invalid_argument for a vertex outside V.
inline bool is_hitting_set(const Hypergraph& h, std::span<const VertexId> x) {
  VertexSet s(h.vertex_count());
  for (auto v : x) {
    if (v >= h.vertex_count()) throw std::invalid_argument("vertex out of range");
    s.insert(v);
  }
  return is_hitting_set(h, s);
}

/// H ⊖ H2: keeps the edges of H that contain no edge of H2.
inline Hypergraph ominus(const Hypergraph& h, const Hypergraph& h2) {
  detail::require_same_universe(h, h2);
  std::vector<Edge> kept;
  for (const auto& e : h.edges()) {
    bool covered = std::any_of(h2.edges().begin(), h2.edges().end(),
                               [&](const Edge& f) { return f.is_subset_of(e); });
    if (!covered) kept.push_back(e);
  }
  return h.with_edges(std::move(kept));
}

/// (V, E(H1) ∪ E(H2)). Names are taken from the first operand.
inline Hypergraph edge_union(const Hypergraph& h1, const Hypergraph& h2) {
  detail::require_same_universe(h1, h2);
  std::vector<Edge> all = h1.edges();
  all.insert(all.end(), h2.edges().begin(), h2.edges().end());
  return h1.with_edges(std::move(all));
}

/// {e - C | e ∈ E, C ⊆ e}, deduplicated.
inline Hypergraph restrict_to_supersets(const Hypergraph& h, const Edge& core) {
  if (!core.empty() && core.max_vertex() >= h.vertex_count())
    throw std::invalid_argument("core vertex out of range");
  std::vector<Edge> out;
  for (const auto& e : h.edges())
    if (core.is_subset_of(e)) out.push_back(e.minus(core));
  return h.with_edges(std::move(out));
}

/// True iff every edge of a is an edge of b.
inline bool edges_subset(const Hypergraph& a, const Hypergraph& b) {
  return std::all_of(a.edges().begin(), a.edges().end(),
                     [&](const Edge& e) { return b.contains_edge(e); });
}

/// Vertices that occur in at least one edge, increasing.
inline std::vector<VertexId> occurring_vertices(const Hypergraph& h) {
  VertexSet s(h.vertex_count());
  for (const auto& e : h.edges())
    for (auto v : e) s.insert(v);
  return s.to_vector<VertexId>();
}

/// Drops vertices that occur in no edge and renumbers the rest in order.
inline Hypergraph shrink(const Hypergraph& h) {
  auto keep = occurring_vertices(h);
  std::vector<VertexId> remap(h.vertex_count(), 0);
  std::vector<std::string> names;
  for (VertexId i = 0; i < keep.size(); ++i) {
    remap[keep[i]] = i;
    names.push_back(h.name(keep[i]));
  }
  std::vector<Edge> edges;
  for (const auto& e : h.edges()) {
    std::vector<VertexId> vs;
    for (auto v : e) vs.push_back(remap[v]);
    edges.emplace_back(std::move(vs));
  }
  return Hypergraph(keep.size(), std::move(edges), std::move(names));
}

/// Builds an edge from display names; throws std::invalid_argument on an unknown name.
inline Edge edge_from_names(const Hypergraph& h, std::span<const std::string> tokens) {
  std::vector<VertexId> vs;
  for (const auto& t : tokens) {
    auto v = h.find_vertex(t);
    if (!v) throw std::invalid_argument("unknown vertex '" + t + "'");
    vs.push_back(*v);
  }
  return Edge(std::move(vs));
}

inline Edge edge_from_names(const Hypergraph& h, std::initializer_list<std::string> tokens) {
  std::vector<std::string> v(tokens);
  return edge_from_names(h, std::span<const std::string>(v));
}

inline std::string format_edge(const Hypergraph& h, const Edge& e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += h.name(e[i]);
  }
  return s + "}";
}

}  // namespace hsk
