#pragma once
// Matryoshka chains and kernel assembly.
//
// A chain (M_0, ..., M_d) for H and k starts at H, loses one unit of
// dimension per step, contains the k-cores of each layer in the next one, and
// every layer is hit by every hitting set of H of size <= k. Stitching the
// layers together as (M_0 ⊖ M_1) ∪ ... ∪ (M_{d-1} ⊖ M_d) ∪ M_d gives an
// instance with the same size-k hitting sets and few edges.
//
// Two chains are provided. cores_chain iterates k_cores, so layer i depends
// on layer i-1. pseudo_chain computes every layer straight from H via
// pseudo_cores, so all layers can run at once.

#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "combinatorics.hpp"
#include "hypergraph.hpp"
#include "pseudo.hpp"
#include "solver.hpp"
#include "sunflower.hpp"

namespace hsk {

struct MatryoshkaSequence {
  Hypergraph base;
  std::size_t k = 1;
  std::vector<Hypergraph> layers;  // layers[i] = M_i, i = 0 .. d(base)
};

enum class MatryoshkaProperty {
  none = 0,
  base = 1,          // M_0 = H
  dimension = 2,     // d(M_i) <= d(H) - i
  cores_nested = 3,  // k_cores(M_i) ⊆ M_{i+1}
  hitting = 4,       // every size-k hitting set of H hits M_i
};

struct MatryoshkaCheck {
  MatryoshkaProperty violated = MatryoshkaProperty::none;
  std::size_t layer = 0;                              // offending i
  std::optional<std::vector<VertexId>> hitting_set;   // property 4 witness X
  explicit operator bool() const { return violated == MatryoshkaProperty::none; }
};

/// Checks the four chain properties in order and reports the first failure.
/// Property 4 enumerates every X of size <= k over the vertices occurring in
/// E(H); vertices outside that set never help X hit H, so this is exhaustive.
inline MatryoshkaCheck verify_matryoshka(const MatryoshkaSequence& seq) {
  const auto& h = seq.base;
  const std::size_t d = dimension(h);
  if (seq.layers.size() != d + 1)
    throw std::invalid_argument("verify_matryoshka: expected " + std::to_string(d + 1) + " layers, got " +
                                std::to_string(seq.layers.size()));
  if (seq.k < 1) throw std::invalid_argument("verify_matryoshka: k must be >= 1");
  for (const auto& m : seq.layers) detail::require_same_universe(h, m);

  MatryoshkaCheck out;
  if (!(seq.layers[0] == h)) {
    out.violated = MatryoshkaProperty::base;
    return out;
  }
  for (std::size_t i = 0; i <= d; ++i) {
    if (dimension(seq.layers[i]) > d - i) {
      out.violated = MatryoshkaProperty::dimension;
      out.layer = i;
      return out;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!edges_subset(k_cores(seq.layers[i], seq.k), seq.layers[i + 1])) {
      out.violated = MatryoshkaProperty::cores_nested;
      out.layer = i;
      return out;
    }
  }
  const auto hitting = small_hitting_sets(h, seq.k);
  for (std::size_t i = 0; i <= d; ++i) {
    for (const auto& x : hitting) {
      if (!is_hitting_set(seq.layers[i], x)) {
        out.violated = MatryoshkaProperty::hitting;
        out.layer = i;
        out.hitting_set = x.to_vector<VertexId>();
        return out;
      }
    }
  }
  return out;
}

/// Per-layer candidate counts collected while building a chain. Entry i is
/// the work spent producing layers[i]; entry 0 is always zero.
struct ChainStats {
  std::vector<std::uint64_t> layer_work;
};

inline MatryoshkaSequence cores_chain(const Hypergraph& h, std::size_t k, ChainStats* stats = nullptr) {
  if (k < 1) throw std::invalid_argument("cores_chain: k must be >= 1");
  const std::size_t d = dimension(h);
  MatryoshkaSequence seq{h, k, {h}};
  std::vector<std::uint64_t> work(d + 1, 0);
  for (std::size_t i = 1; i <= d; ++i) {
    CoreStats cs;
    seq.layers.push_back(k_cores(seq.layers.back(), k, &cs));
    work[i] = cs.candidates;
  }
  if (stats) stats->layer_work = std::move(work);
  return seq;
}

struct PseudoChainOptions {
  bool parallel = true;  // one task per layer
  PseudoSearchOptions search{};
};

inline MatryoshkaSequence pseudo_chain(const Hypergraph& h, std::size_t k, PseudoChainOptions opts = {},
                                       ChainStats* stats = nullptr) {
  if (k < 1) throw std::invalid_argument("pseudo_chain: k must be >= 1");
  const std::size_t d = dimension(h);
  struct Layer {
    Hypergraph edges;
    std::uint64_t work = 0;
  };
  auto compute = [&h, k, &opts](std::size_t level) {
    PseudoSearchStats ps;
    Layer out{pseudo_cores(h, k, level, opts.search, &ps), ps.candidates};
    return out;
  };

  std::vector<Layer> layers(d + 1);
  layers[0].edges = h;
  if (opts.parallel && d > 1) {
    std::vector<std::future<Layer>> pending;
    for (std::size_t level = 1; level <= d; ++level)
      pending.push_back(std::async(std::launch::async, compute, level));
    for (std::size_t level = 1; level <= d; ++level) layers[level] = pending[level - 1].get();
  } else {
    for (std::size_t level = 1; level <= d; ++level) layers[level] = compute(level);
  }

  MatryoshkaSequence seq{h, k, {}};
  std::vector<std::uint64_t> work;
  for (auto& l : layers) {
    seq.layers.push_back(std::move(l.edges));
    work.push_back(l.work);
  }
  if (stats) stats->layer_work = std::move(work);
  return seq;
}

/// Σ_{i=0}^{d} k^i·i!, saturating at 2^64-1.
inline std::uint64_t kernel_size_bound(std::size_t k, std::size_t d) {
  std::uint64_t sum = 0, term = 1;  // term = k^i·i!
  for (std::size_t i = 0; i <= d; ++i) {
    if (i > 0) term = saturating_mul(term, saturating_mul(k, i));
    sum = saturating_add(sum, term);
  }
  return sum;
}

/// k^d·d!, the classic bound for the sequential sunflower kernel.
inline std::uint64_t sequential_size_bound(std::size_t k, std::size_t d) {
  std::uint64_t term = 1;
  for (std::size_t i = 1; i <= d; ++i) term = saturating_mul(term, saturating_mul(k, i));
  return term;
}

/// Stitches a chain into a kernel. Only the cheap properties (layer count,
/// M_0 = H, dimensions) are rechecked here; pass full_check to also run the
/// exhaustive verify_matryoshka first.
inline Hypergraph assemble_kernel(const MatryoshkaSequence& seq, bool full_check = false) {
  const auto& h = seq.base;
  const std::size_t d = dimension(h);
  if (seq.layers.size() != d + 1) throw std::invalid_argument("assemble_kernel: wrong number of layers");
  for (const auto& m : seq.layers) detail::require_same_universe(h, m);
  if (!(seq.layers[0] == h)) throw std::invalid_argument("assemble_kernel: first layer is not the base");
  for (std::size_t i = 0; i <= d; ++i)
    if (dimension(seq.layers[i]) > d - i)
      throw std::invalid_argument("assemble_kernel: layer " + std::to_string(i) + " is too wide");
  if (full_check) {
    const auto check = verify_matryoshka(seq);
    if (!check)
      throw std::invalid_argument("assemble_kernel: not a matryoshka sequence (property " +
                                  std::to_string(static_cast<int>(check.violated)) + ", layer " +
                                  std::to_string(check.layer) + ")");
  }
  Hypergraph k = seq.layers[d];
  for (std::size_t i = 0; i < d; ++i) k = edge_union(k, ominus(seq.layers[i], seq.layers[i + 1]));
  return k;
}

enum class KernelAlgorithm { sequential, cores, pseudo };

inline std::string_view to_string(KernelAlgorithm a) {
  switch (a) {
    case KernelAlgorithm::sequential: return "sequential";
    case KernelAlgorithm::cores: return "cores";
    case KernelAlgorithm::pseudo: return "pseudo";
  }
  return "?";
}

inline std::optional<KernelAlgorithm> parse_kernel_algorithm(std::string_view s) {
  if (s == "sequential") return KernelAlgorithm::sequential;
  if (s == "cores") return KernelAlgorithm::cores;
  if (s == "pseudo") return KernelAlgorithm::pseudo;
  return std::nullopt;
}

struct KernelReport {
  Hypergraph kernel;
  KernelAlgorithm algorithm = KernelAlgorithm::cores;
  std::uint64_t rounds = 0;  // dependent phases
  std::uint64_t work = 0;    // candidate tests
  std::uint64_t bound = 0;   // Σ_{i<=d} k^i·i!
  std::optional<MatryoshkaSequence> chain;  // cores and pseudo only, absent when the guard fires
};

struct KernelOptions {
  // Return H untouched when |E(H)| already fits the bound.
  bool size_guard = true;
  bool parallel = true;
};

/// Runs one of the three kernelization pipelines.
///
/// rounds: for sequential, the number of reduction steps; for cores, the
/// number of chain layers whose construction tested at least one candidate;
/// for pseudo, 1, since every layer reads only H.
inline KernelReport kernelize(const Hypergraph& h, std::size_t k, KernelAlgorithm algo, KernelOptions opts = {}) {
  if (k < 1) throw std::invalid_argument("kernelize: k must be >= 1");
  KernelReport r{h, algo, 0, 0, kernel_size_bound(k, dimension(h)), std::nullopt};
  if (opts.size_guard && h.edge_count() <= r.bound) return r;

  switch (algo) {
    case KernelAlgorithm::sequential: {
      auto s = sequential_kernel_report(h, k);
      r.kernel = std::move(s.kernel);
      r.rounds = s.steps;
      r.work = s.work;
      break;
    }
    case KernelAlgorithm::cores:
    case KernelAlgorithm::pseudo: {
      ChainStats cs;
      auto seq = algo == KernelAlgorithm::cores ? cores_chain(h, k, &cs)
                                                : pseudo_chain(h, k, PseudoChainOptions{opts.parallel, {}}, &cs);
      for (auto w : cs.layer_work) {
        r.work += w;
        if (algo == KernelAlgorithm::cores && w > 0) ++r.rounds;
      }
      if (algo == KernelAlgorithm::pseudo) r.rounds = 1;
      r.kernel = assemble_kernel(seq);
      r.chain = std::move(seq);
      break;
    }
  }
  return r;
}

}  // namespace hsk
