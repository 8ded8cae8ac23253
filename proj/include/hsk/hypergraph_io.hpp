#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hsk/hypergraph.hpp"

// Line-based text format:
//
//   # comment
//   p hg <n> <m>
//   v <name_0> ... <name_{n-1}>     (optional vertex table)
//   e <tok> <tok> ...               (m lines; zero tokens = the empty edge)
//
// Without a `v` line, tokens are interned in order of first appearance and
// vertices that never appear are named "v<i>". The writer always emits the
// `v` line so that reading back yields an identical Hypergraph.

namespace hsk {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  bool have_table = false;
  std::size_t n = 0, m = 0, seen_edges = 0;
  std::vector<std::string> names;
  std::unordered_map<std::string, VertexId> ids;
  std::vector<std::vector<VertexId>> raw_edges;

  auto intern = [&](const std::string& tok) -> VertexId {
    auto it = ids.find(tok);
    if (it != ids.end()) return it->second;
    if (have_table) throw ParseError(lineno, "unknown vertex '" + tok + "'");
    if (names.size() >= n) throw ParseError(lineno, "more than " + std::to_string(n) + " distinct vertices");
    auto id = static_cast<VertexId>(names.size());
    names.push_back(tok);
    ids.emplace(tok, id);
    return id;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind[0] == '#') continue;

    if (kind == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      std::string fmt;
      long long nn = -1, mm = -1;
      if (!(ls >> fmt >> nn >> mm) || fmt != "hg" || nn < 0 || mm < 0)
        throw ParseError(lineno, "expected 'p hg <n> <m>'");
      std::string extra;
      if (ls >> extra) throw ParseError(lineno, "trailing tokens in header");
      n = static_cast<std::size_t>(nn);
      m = static_cast<std::size_t>(mm);
      have_header = true;
    } else if (!have_header) {
      throw ParseError(lineno, "missing 'p hg' header");
    } else if (kind == "v") {
      if (have_table || seen_edges > 0) throw ParseError(lineno, "vertex table must precede edges and appear once");
      std::string tok;
      while (ls >> tok) {
        if (tok[0] == '#') throw ParseError(lineno, "vertex name may not start with '#'");
        if (ids.count(tok)) throw ParseError(lineno, "duplicate vertex name '" + tok + "'");
        ids.emplace(tok, static_cast<VertexId>(names.size()));
        names.push_back(tok);
      }
      if (names.size() != n) throw ParseError(lineno, "vertex table has " + std::to_string(names.size()) + " names, header says " + std::to_string(n));
      have_table = true;
    } else if (kind == "e") {
      if (++seen_edges > m) throw ParseError(lineno, "more edge lines than announced");
      std::vector<VertexId> vs;
      std::string tok;
      while (ls >> tok) vs.push_back(intern(tok));
      raw_edges.push_back(std::move(vs));
    } else {
      throw ParseError(lineno, "unknown line type '" + kind + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing 'p hg' header");
  if (seen_edges != m)
    throw ParseError(lineno, "expected " + std::to_string(m) + " edge lines, found " + std::to_string(seen_edges));

  // Unnamed leftovers get "v<i>", made unique against interned tokens.
  for (std::size_t i = names.size(); i < n; ++i) {
    std::string s = "v" + std::to_string(i);
    while (ids.count(s)) s += "'";
    ids.emplace(s, static_cast<VertexId>(i));
    names.push_back(s);
  }
  std::vector<Edge> edges;
  edges.reserve(raw_edges.size());
  for (auto& vs : raw_edges) edges.emplace_back(std::move(vs));
  return Hypergraph(n, std::move(edges), std::move(names));
}

inline Hypergraph parse_hypergraph(const std::string& text) {
  std::istringstream in(text);
  return read_hypergraph(in);
}

struct WriteOptions {
  bool shrink = false;  // drop vertices outside every edge before writing
};

inline void write_hypergraph(std::ostream& out, const Hypergraph& h, WriteOptions opts = {}) {
  if (opts.shrink) {
    write_hypergraph(out, shrink(h), {});
    return;
  }
  out << "p hg " << h.vertex_count() << ' ' << h.edge_count() << '\n';
  out << 'v';
  for (VertexId i = 0; i < h.vertex_count(); ++i) out << ' ' << h.name(i);
  out << '\n';
  for (const auto& e : h.edges()) {
    out << 'e';
    for (auto v : e) out << ' ' << h.name(v);
    out << '\n';
  }
}

inline std::string to_text(const Hypergraph& h, WriteOptions opts = {}) {
  std::ostringstream out;
  write_hypergraph(out, h, opts);
  return out.str();
}

}  // namespace hsk
