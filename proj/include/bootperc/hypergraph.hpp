#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bootperc/combinatorics.hpp"
#include "bootperc/errors.hpp"

namespace bootperc {

using VertexId = std::uint32_t;

/// A finite hypergraph with vertices 0..num_vertices-1. Edges keep the order
/// they were given in; vertices within an edge are stored sorted.
class Hypergraph {
 public:
  Hypergraph() = default;

  Hypergraph(std::size_t num_vertices, std::vector<std::vector<VertexId>> edges)
      : num_vertices_(num_vertices), edges_(std::move(edges)) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      auto& edge = edges_[e];
      if (edge.empty()) throw InvalidInput("edge " + std::to_string(e) + " is empty");
      std::sort(edge.begin(), edge.end());
      if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
        throw InvalidInput("edge " + std::to_string(e) + " repeats a vertex");
      if (edge.back() >= num_vertices_)
        throw InvalidInput("edge " + std::to_string(e) + " has vertex id " +
                           std::to_string(edge.back()) + " out of range");
    }
  }

  std::size_t num_vertices() const noexcept { return num_vertices_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<std::vector<VertexId>>& edges() const noexcept { return edges_; }
  const std::vector<VertexId>& edge(std::size_t i) const { return edges_.at(i); }

  /// For each vertex, the indices of the edges containing it (ascending).
  std::vector<std::vector<std::size_t>> incidence() const {
    std::vector<std::vector<std::size_t>> inc(num_vertices_);
    for (std::size_t e = 0; e < edges_.size(); ++e)
      for (VertexId v : edges_[e]) inc[v].push_back(e);
    return inc;
  }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::size_t num_vertices_ = 0;
  std::vector<std::vector<VertexId>> edges_;
};

// Text format:
//   p <num_vertices> <num_edges>
//   <v> <v> ...        one line per edge, 0-based ids
// Blank lines and lines starting with 'c' are ignored.

inline void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << "p " << h.num_vertices() << ' ' << h.num_edges() << '\n';
  for (const auto& edge : h.edges()) {
    for (std::size_t i = 0; i < edge.size(); ++i) out << (i ? " " : "") << edge[i];
    out << '\n';
  }
}

inline Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  std::vector<std::vector<VertexId>> edges;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c') continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      long long nv = -1, ne = -1;
      if (!(ls >> tag >> nv >> ne) || tag != "p" || nv < 0 || ne < 0)
        throw InvalidInput("line " + std::to_string(lineno) +
                           ": expected header 'p <num_vertices> <num_edges>'");
      std::string rest;
      if (ls >> rest) throw InvalidInput("line " + std::to_string(lineno) + ": trailing text after header");
      num_vertices = static_cast<std::size_t>(nv);
      num_edges = static_cast<std::size_t>(ne);
      have_header = true;
      continue;
    }
    std::vector<VertexId> edge;
    std::string tok;
    while (ls >> tok) {
      std::size_t pos = 0;
      unsigned long long id = 0;
      try {
        id = std::stoull(tok, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != tok.size() || tok[0] == '-')
        throw InvalidInput("line " + std::to_string(lineno) + ": bad vertex id '" + tok + "'");
      if (id >= num_vertices)
        throw InvalidInput("line " + std::to_string(lineno) + ": vertex id " + tok + " out of range");
      edge.push_back(static_cast<VertexId>(id));
    }
    edges.push_back(std::move(edge));
  }
  if (!have_header) throw InvalidInput("missing 'p' header line");
  if (edges.size() != num_edges)
    throw InvalidInput("header declares " + std::to_string(num_edges) + " edges, found " +
                       std::to_string(edges.size()));
  return Hypergraph(num_vertices, std::move(edges));
}

/// Weak saturation of K_k inside K_n as a vertex process: vertices are the
/// C(n,2) edges of K_n (pairs a<b in lexicographic order), hyperedges are the
/// edge sets of the C(n,k) copies of K_k.
inline Hypergraph weak_saturation_hypergraph(int n, int k) {
  if (k < 2 || n < k) throw InvalidInput("weak saturation needs n >= k >= 2");
  std::vector<std::vector<std::size_t>> pair_id(n, std::vector<std::size_t>(n, 0));
  std::size_t next = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pair_id[a][b] = next++;
  std::vector<std::vector<VertexId>> edges;
  for_each_combination<int>(n, static_cast<std::size_t>(k), [&](const std::vector<int>& clique) {
    std::vector<VertexId> edge;
    for (std::size_t i = 0; i < clique.size(); ++i)
      for (std::size_t j = i + 1; j < clique.size(); ++j)
        edge.push_back(static_cast<VertexId>(pair_id[clique[i]][clique[j]]));
    edges.push_back(std::move(edge));
  });
  return Hypergraph(next, std::move(edges));
}

}  // namespace bootperc
