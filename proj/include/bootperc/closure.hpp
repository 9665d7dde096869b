#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "bootperc/errors.hpp"
#include "bootperc/hypergraph.hpp"

namespace bootperc {

struct InfectionStep {
  VertexId vertex;
  /// Index of an edge whose other vertices were all infected beforehand.
  std::size_t witness_edge;

  friend bool operator==(const InfectionStep&, const InfectionStep&) = default;
};

struct ClosureResult {
  /// The closure [A], sorted ascending.
  std::vector<VertexId> final;
  /// Newly infected vertices in infection order, each with a witness edge.
  std::vector<InfectionStep> trace;

  bool percolated(const Hypergraph& h) const { return final.size() == h.num_vertices(); }
};

/// Computes [A] under the one-uninfected-vertex rule. Each edge keeps a count
/// of its uninfected vertices; an edge is queued when its count reaches one,
/// so every edge is scanned O(|S|) times in total. The final set does not
/// depend on queue order; the trace follows ascending edge index, then FIFO.
inline ClosureResult closure(const Hypergraph& h, const std::vector<VertexId>& initial) {
  const std::size_t nv = h.num_vertices();
  std::vector<char> infected(nv, 0);
  for (VertexId v : initial) {
    if (v >= nv) throw InvalidInput("initial vertex " + std::to_string(v) + " out of range");
    infected[v] = 1;
  }
  const auto inc = h.incidence();
  std::vector<std::size_t> missing(h.num_edges(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    for (VertexId v : h.edge(e)) missing[e] += infected[v] ? 0 : 1;
    if (missing[e] == 1) queue.push_back(e);
  }

  ClosureResult result;
  while (!queue.empty()) {
    const std::size_t e = queue.front();
    queue.pop_front();
    if (missing[e] != 1) continue;
    VertexId u = 0;
    for (VertexId v : h.edge(e)) {
      if (!infected[v]) {
        u = v;
        break;
      }
    }
    infected[u] = 1;
    result.trace.push_back({u, e});
    for (std::size_t f : inc[u]) {
      if (--missing[f] == 1) queue.push_back(f);
    }
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (infected[v]) result.final.push_back(static_cast<VertexId>(v));
  return result;
}

inline bool percolates(const Hypergraph& h, const std::vector<VertexId>& initial) {
  return closure(h, initial).percolated(h);
}

}  // namespace bootperc
