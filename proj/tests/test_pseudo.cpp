#include <gtest/gtest.h>

#include "hsk/generators.hpp"
#include "hsk/pseudo.hpp"
#include "hsk/solver.hpp"
#include "hsk/sunflower.hpp"
#include "test_support.hpp"

using namespace hsk;

namespace {

Edge letters(const Hypergraph& h, std::string_view s) {
  std::vector<std::string> t;
  for (char c : s) t.emplace_back(1, c);
  return edge_from_names(h, t);
}

Hypergraph fig(std::initializer_list<std::string_view> edges) {
  const auto h = gen_fig1();
  std::vector<Edge> es;
  for (auto e : edges) es.push_back(letters(h, e));
  return h.with_edges(std::move(es));
}

// The pseudo-sunflower printed for core {a,b}, leaves in lexicographic order.
PseudoSunflower ab_table() {
  const auto h = gen_fig1();
  const std::vector<std::pair<std::string_view, std::string_view>> rows = {
      {"cf", "uvw"}, {"cg", "rstm"}, {"cho", "pqle"}, {"di", "oru"}, {"dj", "psv"},
      {"d", "kqtw"}, {"e", "l"},     {"e", "m"},      {"e", "n"}};
  PseudoSunflower s{LeveledTree(2, 2), letters(h, "ab"), {}};
  for (auto [one, two] : rows) s.blocks.push_back({letters(h, "ab"), letters(h, one), letters(h, two)});
  return s;
}

PseudoSearchOptions reference(bool prune) {
  PseudoSearchOptions o;
  o.strategy = PseudoSearchOptions::Strategy::leaf_dfs;
  o.transversal_prune = prune;
  return o;
}

// The reference search is exponential in the leaf count; cross-check it only
// on small trees.
bool reference_feasible(std::size_t k, std::size_t L, std::size_t max_leaves = 27) {
  return LeveledTree(k, L).leaf_count() <= max_leaves;
}

PseudoSearchOptions allowances(bool prune) {
  PseudoSearchOptions o;
  o.transversal_prune = prune;
  return o;
}

}  // namespace

TEST(LeveledTree, ShapeAndDigits) {
  const LeveledTree t(2, 2);
  EXPECT_EQ(t.leaf_count(), 9u);
  EXPECT_EQ(t.leaf(0), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(t.leaf(5), (std::vector<std::size_t>{2, 3}));
  for (std::size_t i = 0; i < t.leaf_count(); ++i) EXPECT_EQ(t.leaf_index(t.leaf(i)), i);
  EXPECT_EQ(LeveledTree(3, 0).leaf_count(), 1u);
  EXPECT_THROW(LeveledTree(0, 2), std::invalid_argument);
  EXPECT_THROW(t.leaf_index({1, 4}), std::invalid_argument);
}

TEST(LeveledTree, DivergenceDepth) {
  const LeveledTree t(2, 2);
  EXPECT_EQ(t.divergence_depth({1, 1}, {1, 2}), 2u);
  EXPECT_EQ(t.divergence_depth({1, 1}, {3, 2}), 1u);
  EXPECT_THROW(t.divergence_depth(4, 4), std::invalid_argument);
  for (std::size_t k = 1; k <= 3; ++k) {
    const LeveledTree one(k, 1);
    for (std::size_t l = 0; l < one.leaf_count(); ++l)
      for (std::size_t m = 0; m < one.leaf_count(); ++m)
        if (l != m) { EXPECT_EQ(one.divergence_depth(l, m), 1u); }
  }
}

TEST(VerifyPseudoSunflower, AbTableHolds) {
  EXPECT_TRUE(verify_pseudo_sunflower(gen_fig1(), ab_table()));
}

TEST(VerifyPseudoSunflower, CollisionWithSiblingBreaksProperty4) {
  const auto h = gen_fig1();
  auto s = ab_table();
  s.blocks[0][2] = letters(h, "rst");
  const auto v = verify_pseudo_sunflower(h, s);
  EXPECT_FALSE(v);
  EXPECT_TRUE(v.violates(4));
  // {a,b,c,f,r,s,t} is not an edge, so property 2 fails as well.
  EXPECT_TRUE(v.violates(2));

  auto pure = ab_table();
  pure.blocks[1] = pure.blocks[0];  // leaves (1,1) and (1,2) share {u,v,w} at depth 2
  const auto w = verify_pseudo_sunflower(h, pure);
  ASSERT_EQ(w.violations.size(), 1u);
  EXPECT_EQ(w.violations[0].property, 4);
  EXPECT_EQ(w.violations[0].leaf, 0u);
  EXPECT_EQ(*w.violations[0].other, 1u);
}

TEST(VerifyPseudoSunflower, OtherProperties) {
  const auto h = gen_fig1();
  auto p1 = ab_table();
  p1.blocks[3][0] = letters(h, "a");
  EXPECT_TRUE(verify_pseudo_sunflower(h, p1).violates(1));
  auto p3 = ab_table();
  p3.blocks[6] = {letters(h, "ab"), Edge{}, letters(h, "el")};
  EXPECT_TRUE(verify_pseudo_sunflower(h, p3).violates(3));
  auto p3b = ab_table();
  p3b.blocks[6] = {letters(h, "ab"), letters(h, "el"), letters(h, "l")};  // overlapping blocks
  EXPECT_TRUE(verify_pseudo_sunflower(h, p3b).violates(3));
  auto shape = ab_table();
  shape.blocks.pop_back();
  const auto v = verify_pseudo_sunflower(h, shape);
  ASSERT_FALSE(v);
  EXPECT_EQ(v.violations[0].property, 0);
}

TEST(VerifyPseudoSunflower, LevelOneFromSunflower) {
  for (const auto& c : testkit::random_cases(150)) {
    for (const auto& core : candidate_cores(c.h)) {
      const auto s = find_sunflower(c.h, core, c.k + 1);
      if (!s) continue;
      EXPECT_TRUE(verify_pseudo_sunflower(c.h, pseudo_from_sunflower(*s, c.k))) << c.seed;
    }
  }
  EXPECT_THROW(pseudo_from_sunflower({Edge{}, {Edge{1}}}, 2), std::invalid_argument);
}

TEST(FindPseudoSunflower, Examples) {
  const auto h = gen_fig1();
  const auto ab = letters(h, "ab");
  const auto s = find_pseudo_sunflower(h, ab, 2, 2);
  ASSERT_TRUE(s);
  EXPECT_TRUE(verify_pseudo_sunflower(h, *s));
  EXPECT_EQ(s->core, ab);
  EXPECT_FALSE(find_pseudo_sunflower(h, ab, 2, 1));
  // L > d(H) - |C|
  EXPECT_FALSE(find_pseudo_sunflower(h, ab, 2, 8));
  EXPECT_FALSE(find_pseudo_sunflower(h, letters(h, "abc"), 1, 7));
  EXPECT_THROW(find_pseudo_sunflower(h, ab, 0, 1), std::invalid_argument);
  EXPECT_THROW(find_pseudo_sunflower(h, ab, 1, 0), std::invalid_argument);
}

TEST(FindPseudoSunflower, StrategiesAgreeOnFig1) {
  const auto h = gen_fig1();
  for (std::size_t L = 1; L <= 3; ++L)
    for (const auto& core : candidate_cores(h)) {
      const auto a = find_pseudo_sunflower(h, core, 2, L, allowances(true));
      const auto b = find_pseudo_sunflower(h, core, 2, L, reference(true));
      EXPECT_EQ(a.has_value(), b.has_value()) << format_edge(h, core) << " L=" << L;
      if (a) { EXPECT_TRUE(verify_pseudo_sunflower(h, *a)); }
      if (b) { EXPECT_TRUE(verify_pseudo_sunflower(h, *b)); }
    }
}

TEST(FindPseudoSunflower, MatchesExhaustiveAssignmentSearch) {
  // Tiny instances: k = 1, L = 2 gives four leaves.
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 300 && checked < 400; ++seed) {
    const auto h = gen_random(6, 1 + seed % 5, 4, seed);
    for (const auto& core : candidate_cores(h)) {
      const bool brute = testkit::brute_is_pseudo_core(h, core, 1, 2);
      EXPECT_EQ(find_pseudo_sunflower(h, core, 1, 2, allowances(false)).has_value(), brute) << seed;
      EXPECT_EQ(find_pseudo_sunflower(h, core, 1, 2, reference(false)).has_value(), brute) << seed;
      ++checked;
    }
  }
}

TEST(FindPseudoSunflower, StrategiesAndPruneAgreeOnRandomInstances) {
  for (const auto& c : testkit::random_cases(150)) {
    const auto d = dimension(c.h);
    for (std::size_t L = 1; L <= d; ++L)
      for (const auto& core : candidate_cores(c.h)) {
        const auto fast = find_pseudo_sunflower(c.h, core, c.k, L, allowances(false));
        const auto pruned = find_pseudo_sunflower(c.h, core, c.k, L, allowances(true));
        const auto ref = reference_feasible(c.k, L, 9) ? find_pseudo_sunflower(c.h, core, c.k, L, reference(false)) : fast;
        EXPECT_EQ(ref.has_value(), fast.has_value()) << "seed " << c.seed << " L " << L;
        EXPECT_EQ(fast.has_value(), pruned.has_value()) << "seed " << c.seed << " L " << L;
        if (pseudo_core_ruled_out(c.h, core, c.k, L)) { EXPECT_FALSE(ref) << "seed " << c.seed; }
        for (const auto* w : {&ref, &fast, &pruned})
          if (*w) { EXPECT_TRUE(verify_pseudo_sunflower(c.h, **w)) << "seed " << c.seed; }
      }
  }
}

TEST(PseudoCores, Examples) {
  const auto h = gen_fig1();
  EXPECT_EQ(pseudo_cores(h, 2, 0), h);
  EXPECT_EQ(pseudo_cores(h, 2, 1), k_cores(h, 2));
  EXPECT_EQ(pseudo_cores(h, 2, 1), fig({"abc", "abd", "abe"}));
  EXPECT_TRUE(pseudo_cores(h, 2, 2).contains_edge(letters(h, "ab")));
}

TEST(PseudoCores, Fig1AllLevels) {
  // Every layer of the fig1 chain, cross-checked against the reference search.
  const auto h = gen_fig1();
  const std::vector<Hypergraph> expect = {
      h,
      fig({"abc", "abd", "abe"}),
      fig({"ab", "abc", "abd"}),
      fig({"abc", "abd"}),
      fig({"abc"}),
  };
  for (std::size_t L = 0; L <= 9; ++L) {
    const auto got = pseudo_cores(h, 2, L);
    EXPECT_EQ(got, L < expect.size() ? expect[L] : h.with_edges({})) << "L=" << L;
    if (L >= 1 && reference_feasible(2, L)) { EXPECT_EQ(got, pseudo_cores(h, 2, L, reference(true))) << "L=" << L; }
  }
}

TEST(PseudoCores, LevelProperties) {
  for (const auto& c : testkit::random_cases(200)) {
    const auto d = dimension(c.h);
    const auto hitting = small_hitting_sets(c.h, c.k);
    Hypergraph iterated = c.h;  // H_L of the cores chain
    std::vector<Hypergraph> layers{c.h};
    for (std::size_t L = 1; L <= d + 1; ++L) layers.push_back(pseudo_cores(c.h, c.k, L, allowances(false)));
    for (std::size_t L = 0; L <= d; ++L) {
      const auto& now = layers[L];
      // dimension shrinks by one per level
      EXPECT_LE(dimension(now), d - L) << c.seed;
      // k-cores of a level are pseudo-cores of the next level
      EXPECT_TRUE(edges_subset(k_cores(now, c.k), layers[L + 1])) << c.seed << " L " << L;
      // every small hitting set of H still hits the level
      for (const auto& x : hitting) EXPECT_TRUE(is_hitting_set(now, x)) << c.seed << " L " << L;
      // the iterated cores sit inside the level
      EXPECT_TRUE(edges_subset(iterated, now)) << c.seed << " L " << L;
      iterated = k_cores(iterated, c.k);
    }
    EXPECT_EQ(layers[1], k_cores(c.h, c.k)) << c.seed;
  }
}

TEST(PseudoCores, TreeInstances) {
  for (std::size_t l = 1; l <= 3; ++l)
    for (std::size_t depth = 1; depth <= 3; ++depth) {
      const auto h = gen_tree(l, depth);
      for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t L = 1; L <= depth + 1; ++L) {
          const auto p = pseudo_cores(h, k, L);
          EXPECT_LE(dimension(p), depth + 1 - L);
          for (const auto& core : p.edges()) EXPECT_TRUE(find_pseudo_sunflower(h, core, k, L));
        }
    }
}

TEST(FormatPseudoTable, AbTableLayout) {
  const auto text = format_pseudo_table(gen_fig1(), ab_table());
  EXPECT_EQ(text.substr(0, text.find('\n')), "leaf\tS(l,0)\tS(l,1)\tS(l,2)");
  EXPECT_NE(text.find("(1,1)\t{a,b}\t{c,f}\t{u,v,w}\n"), std::string::npos);
  EXPECT_NE(text.find("(3,3)\t{a,b}\t{e}\t{n}\n"), std::string::npos);
}
