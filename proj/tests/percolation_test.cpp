#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "bootperc/closure.hpp"
#include "bootperc/grid.hpp"
#include "bootperc/hypergraph.hpp"

namespace bootperc {
namespace {

// Oracle: synchronous rounds exactly as in the definition,
// A_{t+1} = A_t + {u : some S with S \ A_t = {u}}.
std::vector<VertexId> synchronous_closure(const Hypergraph& h, const std::vector<VertexId>& a) {
  std::vector<char> in(h.num_vertices(), 0);
  for (VertexId v : a) in[v] = 1;
  while (true) {
    std::vector<VertexId> add;
    for (const auto& e : h.edges()) {
      std::vector<VertexId> out;
      for (VertexId v : e)
        if (!in[v]) out.push_back(v);
      if (out.size() == 1) add.push_back(out[0]);
    }
    if (add.empty()) break;
    for (VertexId v : add) in[v] = 1;
  }
  std::vector<VertexId> res;
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v]) res.push_back(static_cast<VertexId>(v));
  return res;
}

// Replays a trace: each step's witness edge must have all other vertices
// already infected and the step vertex not yet infected.
bool trace_is_valid(const Hypergraph& h, const std::vector<VertexId>& initial, const ClosureResult& c) {
  std::vector<char> in(h.num_vertices(), 0);
  for (VertexId v : initial) in[v] = 1;
  for (const auto& step : c.trace) {
    if (in[step.vertex]) return false;
    const auto& e = h.edge(step.witness_edge);
    if (!std::binary_search(e.begin(), e.end(), step.vertex)) return false;
    for (VertexId v : e)
      if (v != step.vertex && !in[v]) return false;
    in[step.vertex] = 1;
  }
  std::vector<VertexId> replayed;
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v]) replayed.push_back(static_cast<VertexId>(v));
  return replayed == c.final;
}

Hypergraph random_hypergraph(std::mt19937& rng, std::size_t nv, std::size_t ne, std::size_t max_size) {
  std::vector<std::vector<VertexId>> edges;
  std::vector<VertexId> all(nv);
  std::iota(all.begin(), all.end(), VertexId{0});
  for (std::size_t e = 0; e < ne; ++e) {
    const auto size = std::uniform_int_distribution<std::size_t>(1, max_size)(rng);
    std::shuffle(all.begin(), all.end(), rng);
    edges.emplace_back(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
  }
  return Hypergraph(nv, edges);
}

std::vector<VertexId> random_subset(std::mt19937& rng, std::size_t nv, double p) {
  std::vector<VertexId> out;
  std::bernoulli_distribution coin(p);
  for (std::size_t v = 0; v < nv; ++v)
    if (coin(rng)) out.push_back(static_cast<VertexId>(v));
  return out;
}

TEST(HypergraphTest, Validation) {
  EXPECT_THROW(Hypergraph(3, {{}}), InvalidInput);
  EXPECT_THROW(Hypergraph(3, {{0, 0}}), InvalidInput);
  EXPECT_THROW(Hypergraph(3, {{0, 3}}), InvalidInput);
  const Hypergraph h(3, {{2, 0, 1}});
  EXPECT_EQ(h.edge(0), (std::vector<VertexId>{0, 1, 2}));
}

TEST(HypergraphTest, TextFormatRoundTrip) {
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Hypergraph h = random_hypergraph(rng, 12, 15, 5);
    std::stringstream ss;
    write_hypergraph(ss, h);
    EXPECT_EQ(read_hypergraph(ss), h);
  }
  std::istringstream in("c comment\np 4 2\n0 1 2\n\n3\n");
  const Hypergraph h = read_hypergraph(in);
  EXPECT_EQ(h.num_vertices(), 4u);
  EXPECT_EQ(h.edge(1), std::vector<VertexId>{3});
}

TEST(HypergraphTest, TextFormatErrors) {
  auto parse = [](const char* text) {
    std::istringstream in(text);
    return read_hypergraph(in);
  };
  EXPECT_THROW(parse(""), InvalidInput);
  EXPECT_THROW(parse("0 1\n"), InvalidInput);
  EXPECT_THROW(parse("p 3 2\n0 1\n"), InvalidInput);       // edge count mismatch
  EXPECT_THROW(parse("p 3 1\n0 5\n"), InvalidInput);       // out of range
  EXPECT_THROW(parse("p 3 1\n0 x\n"), InvalidInput);       // not a number
  EXPECT_THROW(parse("p 3 1\n0 -1\n"), InvalidInput);
  EXPECT_THROW(parse("p 3 1 9\n0 1\n"), InvalidInput);
}

TEST(ClosureTest, Examples) {
  const Hypergraph empty(3, {});
  const auto c0 = closure(empty, {0, 2});
  EXPECT_EQ(c0.final, (std::vector<VertexId>{0, 2}));
  EXPECT_TRUE(c0.trace.empty());

  const Hypergraph one(3, {{0, 1, 2}});
  const auto c1 = closure(one, {0, 1});
  EXPECT_EQ(c1.final, (std::vector<VertexId>{0, 1, 2}));
  ASSERT_EQ(c1.trace.size(), 1u);
  EXPECT_EQ(c1.trace[0], (InfectionStep{2, 0}));

  const auto spec = GridSpec::homogeneous(3, 2, 2, 2);
  const Hypergraph squares = grid_hypergraph(spec, Family::P);
  const auto u = vertex_ids(construct_U(spec), spec);
  const auto c2 = closure(squares, u);
  EXPECT_EQ(c2.final.size(), 9u);
  EXPECT_TRUE(trace_is_valid(squares, u, c2));
}

TEST(ClosureTest, SingletonEdgesFireUnconditionally) {
  const Hypergraph h(3, {{1}, {1, 2}});
  const auto c = closure(h, {});
  EXPECT_EQ(c.final, (std::vector<VertexId>{1, 2}));
}

TEST(ClosureTest, OutOfRangeInitialVertex) {
  const Hypergraph h(3, {{0, 1}});
  EXPECT_THROW(closure(h, {3}), InvalidInput);
}

TEST(PercolatesTest, Examples) {
  const auto spec = GridSpec::homogeneous(3, 2, 2, 2);
  const Hypergraph k = grid_hypergraph(spec, Family::K);
  std::vector<VertexId> all(9);
  std::iota(all.begin(), all.end(), VertexId{0});
  EXPECT_TRUE(percolates(k, all));
  const auto u = vertex_ids(construct_U(spec), spec);
  EXPECT_TRUE(percolates(k, u));
  for (std::size_t drop = 0; drop < u.size(); ++drop) {
    auto smaller = u;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
    EXPECT_FALSE(percolates(k, smaller)) << "dropped " << u[drop];
  }
}

TEST(PercolatesTest, SquaresPercolateFromExtremalSet) {
  for (int n = 2; n <= 8; ++n) {
    const auto spec = GridSpec::homogeneous(n, 2, 2, 2);
    EXPECT_TRUE(percolates(grid_hypergraph(spec, Family::P), vertex_ids(construct_U(spec), spec))) << n;
  }
}

TEST(PercolatesTest, ExtremalSetPercolatesInIntervalFamily) {
  for (int d = 1; d <= 3; ++d)
    for (int n = 2; n <= 5; ++n)
      for (int t = 2; t <= n; ++t)
        for (int r = 1; r <= d; ++r) {
          const auto spec = GridSpec::homogeneous(n, d, t, r);
          EXPECT_TRUE(percolates(grid_hypergraph(spec, Family::P), vertex_ids(construct_U(spec), spec)));
        }
  const GridSpec inhom({3, 4, 2}, {2, 3, 2}, 2);
  EXPECT_TRUE(percolates(grid_hypergraph(inhom, Family::P), vertex_ids(construct_U(inhom), inhom)));
}

TEST(ClosurePropertyTest, AgreesWithSynchronousRoundsAndTraceReplays) {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Hypergraph h = random_hypergraph(rng, 15, 20, 4);
    const auto a = random_subset(rng, 15, 0.3);
    const auto c = closure(h, a);
    ASSERT_EQ(c.final, synchronous_closure(h, a));
    ASSERT_TRUE(trace_is_valid(h, a, c));
  }
}

TEST(ClosurePropertyTest, MonotoneIdempotentOrderIndependent) {
  std::mt19937 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Hypergraph h = random_hypergraph(rng, 14, 18, 4);
    const auto a = random_subset(rng, 14, 0.25);
    auto b = a;
    for (VertexId v : random_subset(rng, 14, 0.2)) b.push_back(v);

    const auto ca = closure(h, a);
    const auto cb = closure(h, b);
    ASSERT_TRUE(std::includes(cb.final.begin(), cb.final.end(), ca.final.begin(), ca.final.end()));

    ASSERT_TRUE(closure(h, ca.final).trace.empty());

    auto edges = h.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    ASSERT_EQ(closure(Hypergraph(h.num_vertices(), edges), a).final, ca.final);
  }
}

TEST(WeakSaturationTest, Sizes) {
  const Hypergraph h43 = weak_saturation_hypergraph(4, 3);
  EXPECT_EQ(h43.num_vertices(), 6u);
  EXPECT_EQ(h43.num_edges(), 4u);
  for (const auto& e : h43.edges()) EXPECT_EQ(e.size(), 3u);
  const Hypergraph h53 = weak_saturation_hypergraph(5, 3);
  EXPECT_EQ(h53.num_vertices(), 10u);
  EXPECT_EQ(h53.num_edges(), 10u);
  const Hypergraph h64 = weak_saturation_hypergraph(6, 4);
  EXPECT_EQ(h64.num_edges(), 15u);
  for (const auto& e : h64.edges()) EXPECT_EQ(e.size(), 6u);
  EXPECT_THROW(weak_saturation_hypergraph(3, 4), InvalidInput);
  EXPECT_THROW(weak_saturation_hypergraph(4, 1), InvalidInput);
}

TEST(WeakSaturationTest, StarPercolates) {
  // the n-1 edges at one vertex complete every triangle
  const Hypergraph h = weak_saturation_hypergraph(5, 3);
  EXPECT_TRUE(percolates(h, {0, 1, 2, 3}));  // pairs (0,1),(0,2),(0,3),(0,4)
  EXPECT_FALSE(percolates(h, {0, 1, 2}));
}

}  // namespace
}  // namespace bootperc
