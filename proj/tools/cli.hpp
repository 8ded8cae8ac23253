#pragma once
// Subcommands of the `hsk` tool. run() takes the argument vector and two
// streams so tests can drive it without spawning a process.
//
// Exit codes: 0 success or property holds, 1 property fails, 2 usage, I/O or
// parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "hsk/colorcoding.hpp"
#include "hsk/generators.hpp"
#include "hsk/hypergraph_io.hpp"
#include "hsk/kernel.hpp"
#include "hsk/pseudo.hpp"
#include "hsk/restricted_coloring.hpp"
#include "hsk/solver.hpp"

namespace hsk::cli {

enum Exit : int { ok = 0, fails = 1, usage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Hypergraph load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return read_hypergraph(in);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

/// Rebuilds b over a's vertex names (extended by any names only b uses) so
/// two separately written files can be compared vertex by vertex.
inline std::pair<Hypergraph, Hypergraph> align_by_name(const Hypergraph& a, const Hypergraph& b) {
  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> id;
  for (VertexId v = 0; v < a.vertex_count(); ++v) {
    id.emplace(a.name(v), v);
    names.push_back(a.name(v));
  }
  std::vector<VertexId> map_b(b.vertex_count());
  for (VertexId v = 0; v < b.vertex_count(); ++v) {
    auto [it, fresh] = id.emplace(b.name(v), static_cast<VertexId>(names.size()));
    if (fresh) names.push_back(b.name(v));
    map_b[v] = it->second;
  }
  std::vector<Edge> eb;
  for (const auto& e : b.edges()) {
    std::vector<VertexId> vs;
    for (auto v : e) vs.push_back(map_b[v]);
    eb.emplace_back(std::move(vs));
  }
  const auto n = names.size();
  return {Hypergraph(n, a.edges(), names), Hypergraph(n, std::move(eb), names)};
}

inline std::string join_names(const Hypergraph& h, const std::vector<VertexId>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + h.name(vs[i]);
  return s + "}";
}

/// Tokens separated by commas or whitespace; the empty string is ∅.
inline Edge parse_core(const Hypergraph& h, const std::string& spec) {
  std::string norm = spec;
  for (auto& ch : norm)
    if (ch == ',') ch = ' ';
  std::istringstream in(norm);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  try {
    return edge_from_names(h, tokens);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--core: ") + e.what());
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hitting-set kernelization via sunflowers, cores and pseudo-cores", "hsk"};
  app.require_subcommand(1);

  // kernelize
  std::string algo_name = "pseudo", input;
  std::size_t k = 2;
  bool emit_chain = false, shrink_out = false, no_guard = false;
  auto* kern = app.add_subcommand("kernelize", "Compute a kernel and print its report");
  kern->add_option("--algo", algo_name, "sequential | cores | pseudo")
      ->check(CLI::IsMember({"sequential", "cores", "pseudo"}))
      ->capture_default_str();
  kern->add_option("--k", k, "Hitting set size")->required()->check(CLI::PositiveNumber);
  kern->add_flag("--emit-chain", emit_chain, "Also print every chain layer");
  kern->add_flag("--shrink", shrink_out, "Drop vertices outside every edge when writing");
  kern->add_flag("--no-size-guard", no_guard, "Kernelize even if |E| already fits the bound");
  kern->add_option("file", input, "Input hypergraph")->required();

  // solve
  std::string solve_input;
  std::size_t solve_k = 1;
  auto* solve = app.add_subcommand("solve", "Smallest hitting set of size <= k");
  solve->add_option("--k", solve_k)->required();
  solve->add_option("file", solve_input)->required();

  // verify
  std::string orig_path, kernel_path;
  std::size_t verify_k = 1;
  auto* verify = app.add_subcommand("verify", "Check that two files have the same size-k hitting sets");
  verify->add_option("--k", verify_k)->required();
  verify->add_option("original", orig_path)->required();
  verify->add_option("kernel", kernel_path)->required();

  // gen
  auto* gen = app.add_subcommand("gen", "Write a generated instance");
  gen->require_subcommand(1);
  auto* gen_fig = gen->add_subcommand("fig1", "The ten-edge running example");
  std::size_t tree_l = 2, tree_d = 2;
  auto* gen_tree_cmd = gen->add_subcommand("tree", "One edge per root-to-leaf path of a balanced tree");
  gen_tree_cmd->add_option("--l", tree_l, "Children per node minus one")->check(CLI::PositiveNumber);
  gen_tree_cmd->add_option("--d", tree_d, "Depth")->check(CLI::PositiveNumber);
  std::size_t rn = 10, rm = 6, rdmax = 3;
  std::uint64_t rseed = 1;
  auto* gen_rand = gen->add_subcommand("random", "Seeded random hypergraph");
  gen_rand->add_option("--n", rn)->check(CLI::PositiveNumber);
  gen_rand->add_option("--m", rm);
  gen_rand->add_option("--dmax", rdmax)->check(CLI::PositiveNumber);
  gen_rand->add_option("--seed", rseed);
  std::uint32_t fn = 4, fk = 2, fc = 2;
  bool fcheck = false, fcount = false;
  auto* gen_fam = gen->add_subcommand("family", "k-perfect coloring family, one function table per line");
  gen_fam->add_option("--n", fn)->check(CLI::PositiveNumber);
  gen_fam->add_option("--k", fk)->check(CLI::PositiveNumber);
  gen_fam->add_option("--c", fc)->check(CLI::PositiveNumber);
  gen_fam->add_flag("--check", fcheck, "Verify k-perfectness exhaustively");
  gen_fam->add_flag("--count-only", fcount, "Print only the header line");

  // pseudo-test
  std::string core_spec, pseudo_input, method = "search";
  std::size_t pk = 2, plevel = 1;
  auto* ptest = app.add_subcommand("pseudo-test", "Decide whether a set is a k-pseudo-core of a level");
  ptest->add_option("--core", core_spec, "Vertex names separated by commas or spaces")->required();
  ptest->add_option("--k", pk)->required()->check(CLI::PositiveNumber);
  ptest->add_option("--level", plevel)->required()->check(CLI::PositiveNumber);
  ptest->add_option("--method", method, "search | coloring")
      ->check(CLI::IsMember({"search", "coloring"}))
      ->capture_default_str();
  ptest->add_option("file", pseudo_input)->required();

  std::vector<const char*> argv{"hsk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage;
  }

  try {
    if (*kern) {
      const auto h = load(input);
      const auto algo = *parse_kernel_algorithm(algo_name);
      const auto r = kernelize(h, k, algo, KernelOptions{!no_guard, true});
      // The report and the chain go into comment lines, so the whole output
      // is itself a hypergraph file holding the kernel.
      out << "# algorithm: " << to_string(r.algorithm) << '\n'
          << "# rounds: " << r.rounds << '\n'
          << "# work: " << r.work << '\n'
          << "# edges_in: " << h.edge_count() << '\n'
          << "# edges_out: " << r.kernel.edge_count() << '\n'
          << "# bound: " << r.bound << '\n';
      write_hypergraph(out, r.kernel, {shrink_out});
      if (emit_chain) {
        if (!r.chain) {
          out << "# no chain: input already within the bound\n";
        } else {
          for (std::size_t i = 0; i < r.chain->layers.size(); ++i) {
            out << "# layer " << i << '\n';
            std::istringstream text(to_text(r.chain->layers[i], {shrink_out}));
            for (std::string line; std::getline(text, line);) out << "#   " << line << '\n';
          }
        }
      }
      return ok;
    }

    if (*solve) {
      const auto h = load(solve_input);
      const auto a = min_hitting_set(h, solve_k);
      if (!a.exists) {
        out << "no hitting set of size <= " << solve_k << '\n';
        return fails;
      }
      out << "hitting set: " << join_names(h, *a.witness) << '\n';
      return ok;
    }

    if (*verify) {
      const auto [a, b] = align_by_name(load(orig_path), load(kernel_path));
      const auto eq = same_size_k_hitting_sets(a, b, verify_k);
      if (eq) {
        out << "same size-" << verify_k << " hitting sets\n";
        return ok;
      }
      const auto& x = *eq.counterexample;
      const bool hits_original = is_hitting_set(a, std::span<const VertexId>(x));
      out << "differ: counterexample X=" << join_names(a, x) << " hits the "
          << (hits_original ? "original" : "kernel") << " but not the " << (hits_original ? "kernel" : "original")
          << '\n';
      return fails;
    }

    if (*gen) {
      if (*gen_fam) {
        if (fk > fn) throw UsageError("family: --k must not exceed --n");
        const auto f = coloring_family(fn, fk, fc);
        const char* kind = f.kind() == ColoringFamily::Kind::exhaustive ? "exhaustive" : "hashed";
        out << "# family n=" << fn << " k=" << fk << " c=" << fc << " kind=" << kind << " size=" << f.size() << '\n';
        if (!fcount)
          for (std::uint64_t i = 0; i < f.size(); ++i) {
            const auto t = f.table(i);
            for (std::size_t j = 0; j < t.size(); ++j) out << (j ? " " : "") << t[j];
            out << '\n';
          }
        if (fcheck) {
          const auto res = is_k_perfect(f);
          out << "# k-perfect: " << (res.perfect ? "yes" : "no") << '\n';
          return res.perfect ? ok : fails;
        }
        return ok;
      }
      GeneratorSpec spec;
      if (*gen_fig) spec.kind = GeneratorSpec::Kind::fig1;
      if (*gen_tree_cmd) {
        spec.kind = GeneratorSpec::Kind::tree;
        spec.ell = tree_l;
        spec.depth = tree_d;
      }
      if (*gen_rand) {
        if (rdmax > rn) throw UsageError("random: --dmax must not exceed --n");
        spec.kind = GeneratorSpec::Kind::random;
        spec.n = rn;
        spec.m = rm;
        spec.dmax = rdmax;
        spec.seed = rseed;
      }
      write_hypergraph(out, generate(spec));
      return ok;
    }

    if (*ptest) {
      const auto h = load(pseudo_input);
      const auto core = parse_core(h, core_spec);
      std::optional<PseudoSunflower> s;
      if (method == "search") {
        s = find_pseudo_sunflower(h, core, pk, plevel);
      } else if (!pseudo_core_ruled_out(h, core, pk, plevel)) {
        const auto inst = build_restricted_coloring_instance(h, core, pk, plevel);
        if (auto c = solve_restricted_coloring_exact(inst)) s = pseudo_from_coloring(core, pk, plevel, *c);
      }
      if (!s) {
        out << format_edge(h, core) << " is not a " << pk << "-pseudo-core of level " << plevel << '\n';
        return fails;
      }
      out << format_edge(h, core) << " is a " << pk << "-pseudo-core of level " << plevel << '\n'
          << format_pseudo_table(h, *s);
      return ok;
    }
  } catch (const UsageError& e) {
    err << "hsk: " << e.what() << '\n';
    return usage;
  } catch (const std::invalid_argument& e) {
    err << "hsk: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace hsk::cli
