#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <utility>
#include <vector>

#include "bootperc/errors.hpp"
#include "bootperc/hypergraph.hpp"

namespace bootperc {

/// Simple undirected graph with sorted, symmetric adjacency lists.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t num_vertices, const std::vector<std::pair<VertexId, VertexId>>& edges) : adj_(num_vertices) {
    for (const auto& [a, b] : edges) {
      if (a >= num_vertices || b >= num_vertices) throw InvalidInput("graph edge endpoint out of range");
      if (a == b) throw InvalidInput("graph has a self-loop at " + std::to_string(a));
      adj_[a].push_back(b);
      adj_[b].push_back(a);
    }
    for (auto& nbrs : adj_) {
      std::sort(nbrs.begin(), nbrs.end());
      nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
      num_edges_ += nbrs.size();
    }
    num_edges_ /= 2;
  }

  std::size_t num_vertices() const noexcept { return adj_.size(); }
  std::size_t num_edges() const noexcept { return num_edges_; }
  const std::vector<VertexId>& neighbours(VertexId v) const { return adj_.at(v); }
  std::size_t degree(VertexId v) const { return adj_.at(v).size(); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::vector<VertexId>> adj_;
  std::size_t num_edges_ = 0;
};

/// The grid P_{n_1} x ... x P_{n_d}: vertices in row-major id order, adjacent
/// when they differ by one in exactly one coordinate.
inline Graph build_grid_graph(const std::vector<int>& dims) {
  if (dims.empty()) throw InvalidInput("grid graph needs at least one axis");
  std::size_t nv = 1;
  for (int n : dims) {
    if (n < 1) throw InvalidInput("grid side lengths must be positive");
    nv *= static_cast<std::size_t>(n);
  }
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t k = dims.size() - 1; k-- > 0;) stride[k] = stride[k + 1] * static_cast<std::size_t>(dims[k + 1]);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t id = 0; id < nv; ++id) {
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const auto coord = (id / stride[k]) % static_cast<std::size_t>(dims[k]);
      if (coord + 1 < static_cast<std::size_t>(dims[k]))
        edges.emplace_back(static_cast<VertexId>(id), static_cast<VertexId>(id + stride[k]));
    }
  }
  return Graph(nv, edges);
}

/// Q_d, built independently of the grid builder: ids are bit vectors,
/// adjacent when they differ in one bit.
inline Graph build_hypercube(int d) {
  if (d < 1 || d > 24) throw InvalidInput("hypercube dimension must be in [1, 24]");
  const std::size_t nv = std::size_t{1} << d;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t v = 0; v < nv; ++v)
    for (int b = 0; b < d; ++b) {
      const std::size_t w = v ^ (std::size_t{1} << b);
      if (v < w) edges.emplace_back(static_cast<VertexId>(v), static_cast<VertexId>(w));
    }
  return Graph(nv, edges);
}

/// Closure under the r-neighbour rule; returns the final infected set sorted.
inline std::vector<VertexId> rn_closure(const Graph& g, const std::vector<VertexId>& initial, int r) {
  if (r < 1) throw InvalidInput("r-neighbour threshold must be at least 1");
  const std::size_t nv = g.num_vertices();
  std::vector<char> infected(nv, 0);
  std::vector<int> count(nv, 0);
  std::deque<VertexId> queue;
  for (VertexId v : initial) {
    if (v >= nv) throw InvalidInput("initial vertex " + std::to_string(v) + " out of range");
    if (!infected[v]) {
      infected[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : g.neighbours(v)) {
      if (infected[w]) continue;
      if (++count[w] >= r) {
        infected[w] = 1;
        queue.push_back(w);
      }
    }
  }
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < nv; ++v)
    if (infected[v]) out.push_back(static_cast<VertexId>(v));
  return out;
}

}  // namespace bootperc
