// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes except those listed in
// kKnownFailures, which are checked as stated and expected to fail (see the
// README). A known failure that starts passing also makes the run fail, so
// the list cannot go stale silently.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hsk/colorcoding.hpp"
#include "hsk/generators.hpp"
#include "hsk/kernel.hpp"
#include "hsk/pseudo.hpp"
#include "hsk/restricted_coloring.hpp"
#include "hsk/solver.hpp"
#include "hsk/sunflower.hpp"
#include "test_support.hpp"

using namespace hsk;

namespace {

// Pinned limits.
constexpr double kFig1Seconds = 1.0;
constexpr double kAbCoreSeconds = 10.0;
constexpr double kColoringFamilySeconds = 60.0;
constexpr std::size_t kRandomKernel = 200;     // criterion 3 and 9 instances
constexpr std::size_t kRandomMatryoshka = 100;  // criterion 4 instances
constexpr std::size_t kRandomSolver = 100;      // criterion 8 instances

// k_cores(H^i) = H^{i-1} fails on the tree family: the root alone (and every
// shorter root path) is also a k-core of H^i for i >= 2.
const std::set<int> kKnownFailures = {6};

struct Outcome {
  bool pass = true;
  std::string detail;
};

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

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// fig1 plus the seeded random instances of criterion 3.
std::vector<testkit::RandomCase> kernel_instances() {
  std::vector<testkit::RandomCase> v{{0, gen_fig1(), 2}};
  for (auto& c : testkit::random_cases(kRandomKernel)) v.push_back(std::move(c));
  return v;
}

// fig1, trees with l <= 3 and depth <= 3 (k = 1..3), and random instances.
std::vector<testkit::RandomCase> matryoshka_instances() {
  std::vector<testkit::RandomCase> v{{0, gen_fig1(), 2}};
  for (std::size_t l = 1; l <= 3; ++l)
    for (std::size_t d = 1; d <= 3; ++d)
      for (std::size_t k = 1; k <= 3; ++k) v.push_back({0, gen_tree(l, d), k});
  for (auto& c : testkit::random_cases(kRandomMatryoshka, 5001)) v.push_back(std::move(c));
  return v;
}

// Whether {a,b} has 3 petals in H0, independent of k_cores.
bool brute_force_is_core(const Hypergraph& h0) {
  std::uint64_t ab = 0;
  for (auto v : letters(h0, "ab")) ab |= std::uint64_t{1} << v;
  return testkit::brute_is_k_core(h0, ab, 2);
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto h0 = gen_fig1();
  const auto h1 = k_cores(h0, 2);
  const auto h2 = k_cores(h1, 2);
  const bool c1 = h1 == fig({"abc", "abd", "abe"});
  const bool c2 = h2 == fig({"ab"});
  const bool c3 = !brute_force_is_core(h0);
  const double t = seconds_since(t0);
  std::ostringstream s;
  s << "H1 " << (c1 ? "ok" : "wrong") << ", H2 " << (c2 ? "ok" : "wrong") << ", {a,b} not a 2-core of H0 "
    << (c3 ? "ok" : "wrong") << ", " << t << " s (limit " << kFig1Seconds << ")";
  return {c1 && c2 && c3 && t < kFig1Seconds, s.str()};
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto h = gen_fig1();
  const auto ab = letters(h, "ab");
  const std::vector<std::pair<std::string_view, std::string_view>> rows = {
      {"cf", "uvw"}, {"cg", "rstm"}, {"cho", "pqle"}, {"di", "oru"}, {"dj", "psv"},
      {"d", "kqtw"}, {"e", "l"},     {"e", "m"},      {"e", "n"}};
  PseudoSunflower table{LeveledTree(2, 2), ab, {}};
  for (auto [one, two] : rows) table.blocks.push_back({ab, letters(h, one), letters(h, two)});
  const bool table_ok = verify_pseudo_sunflower(h, table).ok();
  const bool contains = pseudo_cores(h, 2, 2).contains_edge(ab);
  const auto inst = build_restricted_coloring_instance(h, ab, 2, 2);
  const auto exact = solve_restricted_coloring_exact(inst);
  const auto cc = solve_restricted_coloring_color_coded(inst);
  const bool exact_ok = exact && is_valid_restricted_coloring(inst, *exact);
  const bool cc_ok = cc && is_valid_restricted_coloring(inst, *cc);
  const double t = seconds_since(t0);
  std::ostringstream s;
  s << "table " << (table_ok ? "ok" : "rejected") << ", {a,b} in H'_2 " << (contains ? "yes" : "no")
    << ", |U|=" << inst.graph_vertex_count << " exact " << (exact_ok ? "sat" : "unsat") << " color-coded "
    << (cc_ok ? "sat" : "unsat") << ", " << t << " s (limit " << kAbCoreSeconds << ")";
  return {table_ok && contains && exact_ok && cc_ok && t < kAbCoreSeconds, s.str()};
}

Outcome criterion3() {
  std::size_t mismatches = 0, n = 0;
  for (const auto& c : kernel_instances()) {
    ++n;
    if (!(pseudo_cores(c.h, c.k, 1) == k_cores(c.h, c.k))) ++mismatches;
  }
  return {mismatches == 0, std::to_string(n) + " instances, " + std::to_string(mismatches) + " mismatches"};
}

Outcome criterion4() {
  std::size_t n = 0, bad = 0;
  std::string first;
  for (const auto& c : matryoshka_instances()) {
    ++n;
    const auto a = verify_matryoshka(cores_chain(c.h, c.k));
    const auto b = verify_matryoshka(pseudo_chain(c.h, c.k));
    if (!a || !b) {
      ++bad;
      if (first.empty())
        first = "; first failure seed " + std::to_string(c.seed) + " property " +
                std::to_string(static_cast<int>(!a ? a.violated : b.violated));
    }
  }
  return {bad == 0, std::to_string(n) + " instances x 2 chains, " + std::to_string(bad) + " failing" + first};
}

Outcome criterion5() {
  std::vector<testkit::RandomCase> all = kernel_instances();
  for (auto& c : matryoshka_instances()) all.push_back(std::move(c));
  std::size_t n = 0, wrong = 0, large = 0;
  for (const auto& c : all) {
    ++n;
    const auto d = dimension(c.h);
    for (auto a : {KernelAlgorithm::sequential, KernelAlgorithm::cores, KernelAlgorithm::pseudo}) {
      const auto r = kernelize(c.h, c.k, a, KernelOptions{false, true});
      if (!same_size_k_hitting_sets(c.h, r.kernel, c.k)) ++wrong;
      const auto limit = a == KernelAlgorithm::sequential ? sequential_size_bound(c.k, d) : kernel_size_bound(c.k, d);
      if (r.kernel.edge_count() > limit) ++large;
    }
  }
  const auto fig1 = kernelize(gen_fig1(), 2, KernelAlgorithm::cores, KernelOptions{false, true}).kernel;
  const bool exact = fig1 == fig({"ab", "uvw"});
  std::ostringstream s;
  s << n << " instances x 3 algorithms, " << wrong << " not equivalent, " << large << " over bound, fig1 cores kernel "
    << (exact ? "{{a,b},{u,v,w}}" : "differs");
  return {wrong == 0 && large == 0 && exact, s.str()};
}

Outcome criterion6() {
  bool layers_ok = true, increasing = true, bounded = true, pseudo_one = true;
  std::uint64_t prev = 0;
  std::ostringstream s;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t i = 1; i <= d; ++i) {
      const bool eq = k_cores(tree_layer(2, d, i), 2) == tree_layer(2, d, i - 1);
      if (!eq) {
        layers_ok = false;
        s << "k_cores(H^" << i << ") != H^" << i - 1 << " at d=" << d << "; ";
      }
    }
    const auto h = gen_tree(2, d);
    const auto c = kernelize(h, 2, KernelAlgorithm::cores, KernelOptions{false, true});
    const auto p = kernelize(h, 2, KernelAlgorithm::pseudo, KernelOptions{false, true});
    bounded = bounded && c.rounds <= d + 1;
    increasing = increasing && c.rounds > prev;
    prev = c.rounds;
    pseudo_one = pseudo_one && p.rounds == 1;
    s << "d=" << d << " cores rounds " << c.rounds << " pseudo rounds " << p.rounds << "; ";
  }
  s << "layerwise identity " << (layers_ok ? "holds" : "fails") << ", rounds <= d+1 " << (bounded ? "yes" : "no")
    << ", strictly increasing " << (increasing ? "yes" : "no") << ", pseudo constant " << (pseudo_one ? "yes" : "no");
  return {layers_ok && bounded && increasing && pseudo_one, s.str()};
}

Outcome criterion7() {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t n_checked = 0, bad = 0;
  std::string first;
  for (std::uint32_t n = 1; n <= 12; ++n)
    for (std::uint32_t k = 1; k <= std::min(n, 3u); ++k)
      for (std::uint32_t c = 1; c <= 4; ++c) {
        ++n_checked;
        if (!is_k_perfect(coloring_family(n, k, c))) {
          if (!bad++) first = "; first failure n=" + std::to_string(n) + " k=" + std::to_string(k) + " c=" + std::to_string(c);
        }
      }
  const double t = seconds_since(t0);
  std::ostringstream s;
  s << n_checked << " (n,k,c) triples, " << bad << " not k-perfect, " << t << " s (limit " << kColoringFamilySeconds
    << ")" << first;
  return {bad == 0 && t < kColoringFamilySeconds, s.str()};
}

Outcome criterion8() {
  std::size_t n = 0, disagree = 0, invalid = 0, sat = 0;
  for (std::uint64_t seed = 1; seed <= kRandomSolver; ++seed) {
    const auto inst = testkit::random_coloring_instance(seed);
    ++n;
    const auto a = solve_restricted_coloring_exact(inst);
    const auto b = solve_restricted_coloring_color_coded(inst);
    if (a.has_value() != b.has_value()) ++disagree;
    if ((a && !is_valid_restricted_coloring(inst, *a)) || (b && !is_valid_restricted_coloring(inst, *b))) ++invalid;
    sat += a.has_value();
  }
  const auto h = gen_fig1();
  const auto ab_instance = build_restricted_coloring_instance(h, letters(h, "ab"), 2, 2);
  const bool ab_agree = solve_restricted_coloring_exact(ab_instance).has_value() ==
                          solve_restricted_coloring_color_coded(ab_instance).has_value();
  std::ostringstream s;
  s << n << " random instances (" << sat << " satisfiable), " << disagree << " disagreements, " << invalid
    << " invalid colorings, {a,b} instance " << (ab_agree ? "agrees" : "disagrees");
  return {disagree == 0 && invalid == 0 && ab_agree, s.str()};
}

Outcome criterion9() {
  std::size_t mismatches = 0, n = 0;
  for (const auto& c : kernel_instances()) {
    ++n;
    if (!(k_cores_color_coded(c.h, c.k) == k_cores(c.h, c.k))) ++mismatches;
  }
  return {mismatches == 0, std::to_string(n) + " instances, " + std::to_string(mismatches) + " mismatches"};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9},
  };
  int unexpected = 0;
  for (const auto& [id, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool known = kKnownFailures.count(id) > 0;
    std::printf("criterion %d: %s (%.2f s) %s%s\n", id, o.pass ? "PASS" : "FAIL", seconds_since(t0),
                o.detail.c_str(), known ? (o.pass ? " [listed as known failure but passed]" : " [known failure]") : "");
    std::fflush(stdout);
    if (o.pass == known) ++unexpected;
  }
  std::printf("%s\n", unexpected == 0 ? "acceptance: all results as expected" : "acceptance: unexpected results");
  return unexpected == 0 ? 0 : 1;
}
