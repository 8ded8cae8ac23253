#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hsk/combinatorics.hpp"
#include "hsk/hypergraph.hpp"
#include "hsk/sunflower.hpp"

namespace hsk {

/// The rooted tree T_L^k: depth L, k+1 children per inner node. Leaves are the
/// digit strings {1..k+1}^L, indexed in lexicographic order.
class LeveledTree {
 public:
  LeveledTree() = default;
  LeveledTree(std::size_t k, std::size_t levels) : k_(k), levels_(levels) {
    if (k < 1) throw std::invalid_argument("LeveledTree: k must be >= 1");
    leaves_ = saturating_pow(k + 1, levels);
    if (leaves_ > (std::uint64_t{1} << 24)) throw std::length_error("LeveledTree: too many leaves");
  }

  std::size_t k() const { return k_; }
  std::size_t levels() const { return levels_; }
  std::size_t leaf_count() const { return static_cast<std::size_t>(leaves_); }

  /// Digits (each in 1..k+1) of leaf t; digit z-1 selects the child at depth z.
  std::vector<std::size_t> leaf(std::size_t t) const {
    std::vector<std::size_t> d(levels_);
    for (std::size_t z = levels_; z-- > 0;) {
      d[z] = t % (k_ + 1) + 1;
      t /= k_ + 1;
    }
    return d;
  }

  std::size_t leaf_index(const std::vector<std::size_t>& digits) const {
    if (digits.size() != levels_) throw std::invalid_argument("leaf has wrong length");
    std::size_t t = 0;
    for (auto d : digits) {
      if (d < 1 || d > k_ + 1) throw std::invalid_argument("leaf digit out of range");
      t = t * (k_ + 1) + (d - 1);
    }
    return t;
  }

  /// Least z >= 1 whose length-z prefixes differ. Throws for equal leaves.
  std::size_t divergence_depth(std::size_t l, std::size_t m) const {
    if (l == m) throw std::invalid_argument("divergence_depth of a leaf with itself");
    const auto a = leaf(l), b = leaf(m);
    std::size_t z = 0;
    while (a[z] == b[z]) ++z;
    return z + 1;
  }

  std::size_t divergence_depth(const std::vector<std::size_t>& l, const std::vector<std::size_t>& m) const {
    return divergence_depth(leaf_index(l), leaf_index(m));
  }

 private:
  std::size_t k_ = 1;
  std::size_t levels_ = 0;
  std::uint64_t leaves_ = 1;
};

/// S(l, i) for every leaf l (lexicographic index) and level i in 0..L.
struct PseudoSunflower {
  LeveledTree tree;
  Edge core;
  std::vector<std::vector<Edge>> blocks;  // blocks[leaf][level]
};

struct PseudoViolation {
  int property = 0;  // 1..4; 0 means the table has the wrong shape
  std::size_t leaf = 0;
  std::optional<std::size_t> other;  // second leaf for property 4
};

struct PseudoVerification {
  std::vector<PseudoViolation> violations;
  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }
  bool violates(int property) const {
    for (const auto& v : violations)
      if (v.property == property) return true;
    return false;
  }
};

/// Checks all four defining properties against h and reports every violation.
inline PseudoVerification verify_pseudo_sunflower(const Hypergraph& h, const PseudoSunflower& s) {
  PseudoVerification out;
  const auto& tree = s.tree;
  const std::size_t L = tree.levels();
  if (s.blocks.size() != tree.leaf_count()) {
    out.violations.push_back({0, 0, std::nullopt});
    return out;
  }
  for (std::size_t t = 0; t < s.blocks.size(); ++t)
    if (s.blocks[t].size() != L + 1) {
      out.violations.push_back({0, t, std::nullopt});
      return out;
    }

  for (std::size_t t = 0; t < s.blocks.size(); ++t) {
    const auto& row = s.blocks[t];
    if (row[0] != s.core) out.violations.push_back({1, t, std::nullopt});
    Edge all;
    for (const auto& b : row) all = all.united(b);
    if (!h.contains_edge(all)) out.violations.push_back({2, t, std::nullopt});
    bool p3 = true;
    for (std::size_t i = 1; i <= L; ++i) p3 = p3 && !row[i].empty();
    for (std::size_t i = 0; i <= L && p3; ++i)
      for (std::size_t j = i + 1; j <= L && p3; ++j) p3 = !row[i].intersects(row[j]);
    if (!p3) out.violations.push_back({3, t, std::nullopt});
  }
  for (std::size_t l = 0; l < s.blocks.size(); ++l)
    for (std::size_t m = l + 1; m < s.blocks.size(); ++m) {
      const auto z = tree.divergence_depth(l, m);
      if (s.blocks[l][z].intersects(s.blocks[m][z])) out.violations.push_back({4, l, m});
    }
  return out;
}

/// Level-1 pseudo-sunflower from an ordinary sunflower with at least k+1
/// petals: leaf i gets the core and petal i minus the core.
inline PseudoSunflower pseudo_from_sunflower(const Sunflower& s, std::size_t k) {
  if (s.petals.size() < k + 1) throw std::invalid_argument("sunflower has fewer than k+1 petals");
  PseudoSunflower p{LeveledTree(k, 1), s.core, {}};
  for (std::size_t i = 0; i <= k; ++i) p.blocks.push_back({s.core, s.petals[i].minus(s.core)});
  return p;
}

struct PseudoSearchOptions {
  // Reject C up front when some X with |X| <= k and X ∩ C = ∅ hits every
  // usable edge. Sound: at every inner node the k+1 subtrees have disjoint
  // footprints on the next level, so X misses one of them, and following
  // such subtrees down to a leaf yields an edge avoiding X.
  bool transversal_prune = true;

  enum class Strategy {
    allowances,  // top-down over per-node vertex allowances (default)
    leaf_dfs,    // depth-first over leaves with a failure memo (reference)
  };
  Strategy strategy = Strategy::allowances;
};

struct PseudoSearchStats {
  std::uint64_t candidates = 0;  // cores examined (pseudo_cores)
  std::uint64_t nodes = 0;       // leaf assignments or child combinations tried
  std::uint64_t pruned = 0;      // cores rejected by the transversal prune
};

namespace detail {

inline bool has_small_transversal(const std::vector<VertexSet>& sets, std::size_t budget, VertexSet& chosen) {
  const VertexSet* open = nullptr;
  for (const auto& s : sets)
    if (!s.intersects(chosen)) {
      open = &s;
      break;
    }
  if (!open) return true;
  if (budget == 0) return false;
  bool found = false;
  open->for_each([&](std::size_t v) {
    if (found) return;
    chosen.insert(v);
    found = has_small_transversal(sets, budget - 1, chosen);
    chosen.erase(v);
  });
  return found;
}

class PseudoSearch {
 public:
  PseudoSearch(const Hypergraph& h, const Edge& core, std::size_t k, std::size_t L, PseudoSearchStats* stats)
      : tree_(k, L), L_(L), stats_(stats) {
    // Local numbering of the vertices that occur in usable residuals.
    std::vector<Edge> residuals;
    for (const auto& e : h.edges())
      if (core.is_proper_subset_of(e)) {
        auto r = e.minus(core);
        if (r.size() >= L) {
          residuals.push_back(r);
        }
      }
    std::vector<VertexId> local_of(h.vertex_count(), 0);
    for (const auto& r : residuals)
      for (auto v : r) local_of[v] = 1;
    for (VertexId v = 0; v < h.vertex_count(); ++v)
      if (local_of[v]) {
        local_of[v] = static_cast<VertexId>(global_.size());
        global_.push_back(v);
      }
    for (const auto& r : residuals) {
      std::vector<std::uint32_t> loc;
      for (auto v : r) loc.push_back(local_of[v]);
      residuals_.push_back(std::move(loc));
    }
    const std::size_t u = global_.size();
    for (const auto& r : residuals_) {
      VertexSet s(u);
      for (auto v : r) s.insert(v);
      residual_sets_.push_back(std::move(s));
    }
    // Twin classes: identical membership across the usable residuals.
    std::vector<std::vector<bool>> membership(u, std::vector<bool>(residuals_.size(), false));
    for (std::size_t r = 0; r < residuals_.size(); ++r)
      for (auto v : residuals_[r]) membership[v][r] = true;
    twin_class_.assign(u, 0);
    for (std::size_t v = 0; v < u; ++v) {
      twin_class_[v] = static_cast<std::uint32_t>(v);
      for (std::size_t w = 0; w < v; ++w)
        if (membership[w] == membership[v]) {
          twin_class_[v] = twin_class_[w];
          break;
        }
    }
    for (std::size_t v = 0; v < u; ++v) {
      if (twin_class_[v] == v) class_members_.emplace_back();
      auto it = std::find(class_leaders_.begin(), class_leaders_.end(), twin_class_[v]);
      if (it == class_leaders_.end()) {
        class_leaders_.push_back(twin_class_[v]);
        it = class_leaders_.end() - 1;
      }
      class_members_[static_cast<std::size_t>(it - class_leaders_.begin())].push_back(static_cast<std::uint32_t>(v));
    }
  }

  bool usable() const { return !residuals_.empty(); }
  const std::vector<std::vector<std::uint32_t>>& residuals() const { return residuals_; }
  const std::vector<VertexId>& global_ids() const { return global_; }
  const std::vector<std::uint32_t>& twin_classes() const { return twin_class_; }

  bool blocked_by_transversal(std::size_t k) const {
    VertexSet chosen(global_.size());
    return has_small_transversal(residual_sets_, k, chosen);
  }

  /// Runs the search; on success choice_ holds, per leaf, the residual used
  /// and the level of each of its elements.
  bool run() {
    const std::size_t u = global_.size();
    divergence_.assign(tree_.leaf_count(), 0);
    for (std::size_t t = 1; t < tree_.leaf_count(); ++t) divergence_[t] = tree_.divergence_depth(t - 1, t);
    forbidden_.assign(L_ + 1, VertexSet(u));
    footprint_.assign(L_ + 1, VertexSet(u));
    choice_.assign(tree_.leaf_count(), {});
    return place(0);
  }

  PseudoSunflower witness(const Edge& core) const {
    PseudoSunflower s{tree_, core, {}};
    for (std::size_t t = 0; t < tree_.leaf_count(); ++t) {
      const auto& ch = choice_[t];
      std::vector<std::vector<VertexId>> levels(L_ + 1);
      const auto& r = residuals_[ch.residual];
      for (std::size_t j = 0; j < r.size(); ++j) levels[ch.level[j]].push_back(global_[r[j]]);
      std::vector<Edge> row{core};
      for (std::size_t z = 1; z <= L_; ++z) row.emplace_back(std::move(levels[z]));
      s.blocks.push_back(std::move(row));
    }
    return s;
  }

 private:
  struct Choice {
    std::size_t residual = 0;
    std::vector<std::uint32_t> level;  // level (1..L) of each residual element
    std::vector<int> prev;             // earlier interchangeable element, or -1
  };

  // Memo key of the state before leaf t, canonical up to permutations inside
  // twin classes: per class, the sorted (forbidden, footprint) level masks of
  // its members. Isomorphic states share one entry.
  std::vector<std::uint64_t> state_key(std::size_t t) const {
    std::vector<std::uint64_t> key{t};
    std::vector<std::pair<std::uint64_t, std::uint64_t>> sig;
    for (const auto& members : class_members_) {
      sig.clear();
      for (auto v : members) {
        std::uint64_t f = 0, g = 0;
        for (std::size_t z = 1; z <= L_; ++z) {
          if (forbidden_[z].contains(v)) f |= std::uint64_t{1} << z;
          if (footprint_[z].contains(v)) g |= std::uint64_t{1} << z;
        }
        sig.emplace_back(f, g);
      }
      std::sort(sig.begin(), sig.end());
      for (const auto& [f, g] : sig) {
        key.push_back(f);
        key.push_back(g);
      }
    }
    return key;
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (auto w : k) h = (h ^ w) * 0x100000001b3ULL ^ (h >> 29);
      return h;
    }
  };

  bool place(std::size_t t) {
    if (t == tree_.leaf_count()) return true;
    // Entering leaf t: the depth-z* node changes (same parent), deeper nodes are new.
    std::vector<VertexSet> saved_f, saved_g;
    if (t > 0) {
      const auto zs = divergence_[t];
      saved_f = forbidden_;
      saved_g = footprint_;
      forbidden_[zs] |= footprint_[zs];
      footprint_[zs].clear();
      for (std::size_t z = zs + 1; z <= L_; ++z) {
        forbidden_[z].clear();
        footprint_[z].clear();
      }
    }
    auto key = state_key(t);
    bool ok = false;
    if (!failed_.count(key)) {
      for (std::size_t r = 0; r < residuals_.size() && !ok; ++r) {
        choice_[t].residual = r;
        choice_[t].level.assign(residuals_[r].size(), 0);
        mark_interchangeable(t, r);
        ok = assign(t, r, 0, 0);
      }
      if (!ok) failed_.insert(std::move(key));
    }
    if (t > 0) {
      forbidden_ = std::move(saved_f);
      footprint_ = std::move(saved_g);
    }
    return ok;
  }

  // Symmetry breaking. Two elements of the residual that are twins (same
  // membership in every usable residual) and lie in exactly the same
  // forbidden and footprint sets can be swapped without changing the rest of
  // the search, so the later one never takes a smaller level than the earlier.
  void mark_interchangeable(std::size_t t, std::size_t r) {
    const auto& elems = residuals_[r];
    auto& prev = choice_[t].prev;
    prev.assign(elems.size(), -1);
    auto same_state = [&](std::uint32_t a, std::uint32_t b) {
      for (std::size_t z = 1; z <= L_; ++z)
        if (forbidden_[z].contains(a) != forbidden_[z].contains(b) ||
            footprint_[z].contains(a) != footprint_[z].contains(b))
          return false;
      return true;
    };
    for (std::size_t j = 0; j < elems.size(); ++j)
      for (std::size_t i = j; i-- > 0;)
        if (twin_class_[elems[i]] == twin_class_[elems[j]] && same_state(elems[i], elems[j])) {
          prev[j] = static_cast<int>(i);
          break;
        }
  }

  // Assigns residual element j of leaf t to a level, keeping every level
  // nonempty in the end and clear of the forbidden footprints.
  bool assign(std::size_t t, std::size_t r, std::size_t j, std::uint64_t used_mask) {
    const auto& elems = residuals_[r];
    const std::size_t remaining = elems.size() - j;
    const std::size_t empty_levels = L_ - static_cast<std::size_t>(std::popcount(used_mask));
    if (remaining < empty_levels) return false;
    if (j == elems.size()) {
      if (stats_) ++stats_->nodes;
      // Leaves of one subtree may share footprint elements, so restore the
      // previous footprints wholesale instead of erasing.
      const auto saved = footprint_;
      for (std::size_t i = 0; i < elems.size(); ++i) footprint_[choice_[t].level[i]].insert(elems[i]);
      const bool ok = place(t + 1);
      footprint_ = saved;
      return ok;
    }
    const auto v = elems[j];
    const int prev = choice_[t].prev[j];
    for (std::size_t z = prev < 0 ? 1 : choice_[t].level[static_cast<std::size_t>(prev)]; z <= L_; ++z) {
      if (forbidden_[z].contains(v)) continue;
      choice_[t].level[j] = static_cast<std::uint32_t>(z);
      if (assign(t, r, j + 1, used_mask | (std::uint64_t{1} << z))) return true;
    }
    return false;
  }

  LeveledTree tree_;
  std::size_t L_;
  PseudoSearchStats* stats_;
  std::vector<VertexId> global_;
  std::vector<std::vector<std::uint32_t>> residuals_;
  std::vector<VertexSet> residual_sets_;
  std::vector<std::uint32_t> twin_class_;
  std::vector<std::uint32_t> class_leaders_;
  std::vector<std::vector<std::uint32_t>> class_members_;
  std::vector<std::size_t> divergence_;
  std::vector<VertexSet> forbidden_, footprint_;
  std::vector<Choice> choice_;
  std::unordered_set<std::vector<std::uint64_t>, KeyHash> failed_;
};


// Top-down search over allowances.
//
// Property 4 only compares leaves in sibling subtrees, and only on the level
// where they split. Give every node c at depth z an allowance D(c), the set of
// vertices its leaves may put on level z, with sibling allowances disjoint.
// Then a leaf is fine iff its edge splits into nonempty blocks with block z
// inside the allowance of its depth-z ancestor. Conversely the level-z
// footprints of any pseudo-sunflower are such allowances. Larger allowances
// never hurt, so a node's k+1 children may as well split all vertices among
// themselves, and whether a node works depends only on the allowances above
// it. Vertices with equal edge membership and equal allowance membership are
// interchangeable, which makes the memo key canonical.
class AllowanceSearch {
 public:
  using Mask = std::uint64_t;

  AllowanceSearch(const std::vector<std::vector<std::uint32_t>>& residuals,
                  const std::vector<std::uint32_t>& twin_class, std::size_t k, std::size_t L,
                  PseudoSearchStats* stats)
      : twin_class_(twin_class), k_(k), L_(L), stats_(stats) {
    for (const auto& r : residuals) {
      Mask m = 0;
      for (auto v : r) m |= Mask{1} << v;
      residuals_.push_back(m);
    }
  }

  bool run() { return feasible({}); }

  /// Calls emit(allowances) for every leaf in lexicographic order; only
  /// valid after run() returned true.
  template <typename Emit>
  void for_each_leaf(Emit&& emit) {
    std::vector<Mask> d;
    expand(d, emit);
  }

  /// Residual index and level of each element for a leaf under allowances d.
  std::pair<std::size_t, std::vector<std::uint32_t>> leaf_row(const std::vector<Mask>& d) const {
    std::vector<int> match;
    for (std::size_t r = 0; r < residuals_.size(); ++r) {
      if (!leaf_fits(residuals_[r], d, match)) continue;
      std::vector<std::uint32_t> level;
      for (Mask bits = residuals_[r]; bits; bits &= bits - 1) {
        const int v = std::countr_zero(bits);
        std::uint32_t z = 0;
        for (std::size_t i = 0; i < L_ && !z; ++i)
          if (match[i] == v) z = static_cast<std::uint32_t>(i + 1);
        for (std::size_t i = 0; i < L_ && !z; ++i)
          if (d[i] >> v & 1) z = static_cast<std::uint32_t>(i + 1);
        level.push_back(z);
      }
      return {r, level};
    }
    throw std::logic_error("allowance search: leaf without a fitting edge");
  }

 private:
  // Kuhn matching of levels 1..z onto distinct elements of r allowed there.
  static bool augment(std::size_t i, Mask r, const std::vector<Mask>& d, std::vector<int>& match, Mask& seen) {
    for (Mask bits = r & d[i] & ~seen; bits; bits &= bits - 1) {
      const int v = std::countr_zero(bits);
      seen |= Mask{1} << v;
      std::size_t owner = d.size();
      for (std::size_t j = 0; j < match.size(); ++j)
        if (match[j] == v) owner = j;
      if (owner == d.size() || augment(owner, r, d, match, seen)) {
        match[i] = v;
        return true;
      }
    }
    return false;
  }

  static bool levels_matchable(Mask r, const std::vector<Mask>& d, std::vector<int>& match) {
    match.assign(d.size(), -1);
    for (std::size_t i = 0; i < d.size(); ++i) {
      Mask seen = 0;
      if (!augment(i, r, d, match, seen)) return false;
    }
    return true;
  }

  // r splits into L nonempty blocks, block i inside d[i-1].
  bool leaf_fits(Mask r, const std::vector<Mask>& d, std::vector<int>& match) const {
    Mask any = 0;
    for (auto m : d) any |= m;
    return (r & ~any) == 0 && levels_matchable(r, d, match);
  }

  // Vertices of edges that can still host a leaf below a node with allowances d.
  Mask relevant(const std::vector<Mask>& d) const {
    Mask out = 0;
    std::vector<int> match;
    for (auto r : residuals_)
      if ((r & ~out) && levels_matchable(r, d, match)) out |= r;
    return out;
  }

  std::vector<std::uint64_t> key_of(const std::vector<Mask>& d, Mask rel) const {
    std::vector<std::uint64_t> key;
    for (Mask bits = rel; bits; bits &= bits - 1) {
      const int v = std::countr_zero(bits);
      std::uint64_t sig = 0;
      for (std::size_t i = 0; i < d.size(); ++i) sig |= (d[i] >> v & 1) << i;
      key.push_back(std::uint64_t{twin_class_[static_cast<std::size_t>(v)]} << 32 | sig);
    }
    std::sort(key.begin(), key.end());
    key.push_back(d.size());
    return key;
  }

  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (auto w : k) h = (h ^ w) * 0x100000001b3ULL ^ (h >> 29);
      return h;
    }
  };

  bool feasible(const std::vector<Mask>& d) {
    if (d.size() == L_) {
      std::vector<int> match;
      for (auto r : residuals_)
        if (leaf_fits(r, d, match)) return true;
      return false;
    }
    if (d.size() + 1 == L_) return last_split(d).has_value();
    const Mask rel = relevant(d);
    if (!rel) return false;
    auto key = key_of(d, rel);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool ok = split(d, rel).has_value();
    memo_.emplace(std::move(key), ok);
    return ok;
  }

  // Node just above the leaves: each child needs one edge whose last block
  // fits its allowance. The smallest usable last blocks are the vertices no
  // earlier level allows (when there are any) or else a single vertex, and
  // the children need k+1 pairwise disjoint ones.
  std::optional<std::vector<Mask>> last_split(const std::vector<Mask>& d) const {
    Mask earlier = 0;
    for (auto m : d) earlier |= m;
    std::vector<Mask> blocks;
    std::vector<int> match;
    auto consider = [&](Mask r, Mask last) {
      if (std::find(blocks.begin(), blocks.end(), last) == blocks.end() && levels_matchable(r & ~last, d, match))
        blocks.push_back(last);
    };
    for (auto r : residuals_) {
      const Mask forced = r & ~earlier;
      if (forced) {
        consider(r, forced);
      } else {
        for (Mask bits = r; bits; bits &= bits - 1) consider(r, bits & -bits);
      }
    }
    std::sort(blocks.begin(), blocks.end(), [](Mask a, Mask b) {
      return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b;
    });
    std::vector<Mask> chosen;
    if (!pack(blocks, 0, 0, chosen)) return std::nullopt;
    return chosen;
  }

  bool pack(const std::vector<Mask>& blocks, std::size_t from, Mask used, std::vector<Mask>& chosen) const {
    if (chosen.size() == k_ + 1) return true;
    for (std::size_t i = from; i + (k_ + 1 - chosen.size()) <= blocks.size(); ++i) {
      if (blocks[i] & used) continue;
      if (stats_) ++stats_->nodes;
      chosen.push_back(blocks[i]);
      if (pack(blocks, i + 1, used | blocks[i], chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  // Splits the relevant vertices among the k+1 children so that each child
  // is feasible, or reports that no split works.
  std::optional<std::vector<Mask>> split(const std::vector<Mask>& d, Mask rel) {
    // Interchangeable vertices form groups; a split is a count per child.
    std::vector<std::pair<std::uint64_t, Mask>> groups;
    for (Mask bits = rel; bits; bits &= bits - 1) {
      const int v = std::countr_zero(bits);
      std::uint64_t sig = 0;
      for (std::size_t i = 0; i < d.size(); ++i) sig |= (d[i] >> v & 1) << i;
      const std::uint64_t id = std::uint64_t{twin_class_[static_cast<std::size_t>(v)]} << 32 | sig;
      auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == id; });
      if (it == groups.end()) groups.emplace_back(id, Mask{1} << v);
      else it->second |= Mask{1} << v;
    }
    // Vertices shared by many edges first: they decide the most.
    auto weight = [&](Mask g) {
      const int v = std::countr_zero(g);
      return std::count_if(residuals_.begin(), residuals_.end(), [&](Mask r) { return r >> v & 1; });
    };
    std::stable_sort(groups.begin(), groups.end(),
                     [&](const auto& a, const auto& b) { return weight(a.second) > weight(b.second); });

    Splitter sp{*this, d, {}, {}, {}, std::vector<Mask>(k_ + 1, 0), std::vector<char>(k_ + 1, 1), rel};
    for (const auto& g : groups) sp.groups.push_back(g.second);
    sp.good.clear();
    sp.bad.clear();
    if (!sp.place(0)) return std::nullopt;
    return sp.parts;
  }

  struct Splitter {
    AllowanceSearch& self;
    const std::vector<Mask>& d;
    std::vector<Mask> groups;
    std::vector<Mask> good, bad;  // child allowances known to work / to fail
    std::vector<Mask> parts;
    std::vector<char> same_as_prev;  // child i has had the same parts as child i-1 so far
    Mask rest;

    bool child_ok(Mask allowance) {
      for (auto g : good)
        if ((g & ~allowance) == 0) return true;
      for (auto b : bad)
        if ((allowance & ~b) == 0) return false;
      auto next = d;
      next.push_back(allowance);
      const bool ok = self.feasible(next);
      (ok ? good : bad).push_back(allowance);
      return ok;
    }

    bool place(std::size_t g) {
      if (g == groups.size()) return true;
      const Mask group = groups[g];
      const auto size = static_cast<std::size_t>(std::popcount(group));
      std::vector<std::vector<std::size_t>> counts;
      std::vector<std::size_t> c(parts.size(), 0);
      compositions(0, size, c, counts);
      std::stable_sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
        return *std::max_element(a.begin(), a.end()) < *std::max_element(b.begin(), b.end());
      });
      const Mask saved_rest = rest;
      const auto saved_parts = parts;
      const auto saved_same = same_as_prev;
      rest &= ~group;
      for (const auto& cnt : counts) {
        if (self.stats_) ++self.stats_->nodes;
        Mask pool = group;
        for (std::size_t i = 0; i < parts.size(); ++i)
          for (std::size_t j = 0; j < cnt[i]; ++j) {
            parts[i] |= pool & -pool;
            pool &= pool - 1;
          }
        bool ok = true;
        for (std::size_t i = 0; i < parts.size() && ok; ++i) {
          same_as_prev[i] = i > 0 && saved_same[i] && cnt[i] == cnt[i - 1];
          if (!same_as_prev[i]) ok = child_ok(parts[i] | rest);
        }
        if (ok && place(g + 1)) return true;
        parts = saved_parts;
        same_as_prev = saved_same;
      }
      rest = saved_rest;
      return false;
    }

    // Counts per child summing to `left`; children identical so far get
    // non-increasing counts, which drops mirror images of the same split.
    void compositions(std::size_t i, std::size_t left, std::vector<std::size_t>& c,
                      std::vector<std::vector<std::size_t>>& out) const {
      if (i + 1 == c.size()) {
        if (i > 0 && same_as_prev[i] && left > c[i - 1]) return;
        c[i] = left;
        out.push_back(c);
        return;
      }
      std::size_t hi = left;
      if (i > 0 && same_as_prev[i]) hi = std::min(hi, c[i - 1]);
      for (std::size_t x = 0; x <= hi; ++x) {
        c[i] = x;
        compositions(i + 1, left - x, c, out);
      }
    }
  };

  template <typename Emit>
  void expand(std::vector<Mask>& d, Emit& emit) {
    if (d.size() == L_) {
      emit(static_cast<const std::vector<Mask>&>(d));
      return;
    }
    auto it = parts_.find(d);
    if (it == parts_.end()) {
      auto p = d.size() + 1 == L_ ? last_split(d) : split(d, relevant(d));
      if (!p) throw std::logic_error("allowance search: lost a feasible split");
      it = parts_.emplace(d, std::move(*p)).first;
    }
    const auto parts = it->second;
    for (auto m : parts) {
      d.push_back(m);
      expand(d, emit);
      d.pop_back();
    }
  }

  std::vector<Mask> residuals_;
  const std::vector<std::uint32_t>& twin_class_;
  std::size_t k_, L_;
  PseudoSearchStats* stats_;
  std::unordered_map<std::vector<std::uint64_t>, bool, KeyHash> memo_;
  std::map<std::vector<Mask>, std::vector<Mask>> parts_;
};

}  // namespace detail

/// Exact search for a pseudo-sunflower of level L with core C. Every leaf gets
/// an edge properly containing C and an ordered partition of e - C into L
/// nonempty levels. Deterministic for fixed options.
inline std::optional<PseudoSunflower> find_pseudo_sunflower(const Hypergraph& h, const Edge& core, std::size_t k,
                                                            std::size_t L, PseudoSearchOptions opts = {},
                                                            PseudoSearchStats* stats = nullptr) {
  if (k < 1 || L < 1) throw std::invalid_argument("find_pseudo_sunflower: k and L must be >= 1");
  if (L > 63) return std::nullopt;
  detail::PseudoSearch search(h, core, k, L, stats);
  if (!search.usable()) return std::nullopt;  // no residual has L elements
  if (opts.transversal_prune && search.blocked_by_transversal(k)) {
    if (stats) ++stats->pruned;
    return std::nullopt;
  }
  if (opts.strategy == PseudoSearchOptions::Strategy::leaf_dfs) {
    if (!search.run()) return std::nullopt;
    return search.witness(core);
  }
  if (search.global_ids().size() > 64) {
    if (!search.run()) return std::nullopt;
    return search.witness(core);
  }
  const auto& ids = search.global_ids();
  const auto& residuals = search.residuals();
  detail::AllowanceSearch allowances(residuals, search.twin_classes(), k, L, stats);
  if (!allowances.run()) return std::nullopt;
  PseudoSunflower s{LeveledTree(k, L), core, {}};
  allowances.for_each_leaf([&](const std::vector<std::uint64_t>& d) {
    const auto [r, level] = allowances.leaf_row(d);
    std::vector<std::vector<VertexId>> blocks(L + 1);
    std::size_t j = 0;
    for (auto v : residuals[r]) blocks[level[j++]].push_back(ids[v]);
    std::vector<Edge> row{core};
    for (std::size_t z = 1; z <= L; ++z) row.emplace_back(std::move(blocks[z]));
    s.blocks.push_back(std::move(row));
  });
  return s;
}

/// Cheap proofs that C is no pseudo-core of level L: no edge has L vertices
/// beyond C, or k vertices outside C meet every such edge.
inline bool pseudo_core_ruled_out(const Hypergraph& h, const Edge& core, std::size_t k, std::size_t L) {
  if (k < 1 || L < 1) throw std::invalid_argument("pseudo_core_ruled_out: k and L must be >= 1");
  if (L > 63) return true;
  detail::PseudoSearch search(h, core, k, L, nullptr);
  return !search.usable() || search.blocked_by_transversal(k);
}

/// H'_L: every k-pseudo-core of level L (H itself for L = 0).
inline Hypergraph pseudo_cores(const Hypergraph& h, std::size_t k, std::size_t L, PseudoSearchOptions opts = {},
                               PseudoSearchStats* stats = nullptr) {
  if (k < 1) throw std::invalid_argument("pseudo_cores: k must be >= 1");
  if (L == 0) return h;
  std::vector<Edge> cores;
  for (const auto& c : candidate_cores(h)) {
    if (stats) ++stats->candidates;
    if (find_pseudo_sunflower(h, c, k, L, opts, stats)) cores.push_back(c);
  }
  return h.with_edges(std::move(cores));
}

/// Table layout: one row per leaf, columns S(l,0) .. S(l,L).
inline std::string format_pseudo_table(const Hypergraph& h, const PseudoSunflower& s) {
  std::string out = "leaf";
  for (std::size_t i = 0; i <= s.tree.levels(); ++i) out += "\tS(l," + std::to_string(i) + ")";
  out += '\n';
  for (std::size_t t = 0; t < s.blocks.size(); ++t) {
    out += '(';
    const auto digits = s.tree.leaf(t);
    for (std::size_t z = 0; z < digits.size(); ++z) out += (z ? "," : "") + std::to_string(digits[z]);
    out += ')';
    for (const auto& b : s.blocks[t]) out += '\t' + format_edge(h, b);
    out += '\n';
  }
  return out;
}

}  // namespace hsk
