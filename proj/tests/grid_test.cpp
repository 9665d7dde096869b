#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "bootperc/grid.hpp"

namespace bootperc {
namespace {

// Oracle: every product of per-axis subsets (as bitmasks over [n_k]) with
// exactly r factors of size t_k and singletons elsewhere; P additionally
// requires the factors to be intervals. Returns each edge as a sorted id list.
std::set<std::vector<VertexId>> brute_force_edges(const GridSpec& spec, Family fam) {
  const std::size_t d = spec.d();
  std::vector<std::vector<std::vector<int>>> per_axis(d);  // all candidate factors
  for (std::size_t k = 0; k < d; ++k) {
    for (unsigned mask = 1; mask < (1u << spec.n(k)); ++mask) {
      std::vector<int> vals;
      for (int b = 0; b < spec.n(k); ++b)
        if (mask & (1u << b)) vals.push_back(b + 1);
      const bool big = static_cast<int>(vals.size()) == spec.t(k);
      if (vals.size() != 1 && !big) continue;
      if (fam == Family::P && vals.back() - vals.front() + 1 != static_cast<int>(vals.size())) continue;
      per_axis[k].push_back(vals);
    }
  }
  std::set<std::vector<VertexId>> out;
  std::vector<std::size_t> pick(d, 0);
  while (true) {
    int big = 0;
    for (std::size_t k = 0; k < d; ++k) big += per_axis[k][pick[k]].size() > 1 ? 1 : 0;
    // t_k >= 2 so "size > 1" is exactly "size t_k"
    if (big == spec.r()) {
      std::vector<VertexId> ids;
      for (std::uint64_t id = 0; id < spec.num_vertices(); ++id) {
        const MultiIndex v = decode(id, spec);
        bool in = true;
        for (std::size_t k = 0; k < d && in; ++k) {
          const auto& f = per_axis[k][pick[k]];
          in = std::find(f.begin(), f.end(), v[k]) != f.end();
        }
        if (in) ids.push_back(static_cast<VertexId>(id));
      }
      out.insert(ids);
    }
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (++pick[k] < per_axis[k].size()) break;
      pick[k] = 0;
      if (k == 0) return out;
    }
  }
}

std::vector<GridSpec> small_specs() {
  std::vector<GridSpec> specs;
  for (int d = 1; d <= 3; ++d)
    for (int n = 2; n <= 5; ++n)
      for (int t = 2; t <= n; ++t)
        for (int r = 1; r <= d; ++r)
          if (ipow(n, d) <= 125) specs.push_back(GridSpec::homogeneous(n, d, t, r));
  specs.emplace_back(std::vector<int>{3, 4}, std::vector<int>{2, 3}, 1);
  specs.emplace_back(std::vector<int>{3, 4}, std::vector<int>{2, 3}, 2);
  specs.emplace_back(std::vector<int>{2, 3, 4}, std::vector<int>{2, 2, 3}, 2);
  specs.emplace_back(std::vector<int>{5, 2, 3}, std::vector<int>{4, 2, 3}, 3);
  return specs;
}

TEST(GridSpecTest, RejectsInvalidParameters) {
  EXPECT_THROW(GridSpec::homogeneous(3, 2, 4, 2), InvalidInput);  // t > n
  EXPECT_THROW(GridSpec::homogeneous(3, 2, 1, 2), InvalidInput);  // t < 2
  EXPECT_THROW(GridSpec::homogeneous(3, 2, 2, 3), InvalidInput);  // r > d
  EXPECT_THROW(GridSpec::homogeneous(3, 2, 2, 0), InvalidInput);
  EXPECT_THROW(GridSpec::homogeneous(3, 0, 2, 1), InvalidInput);
  EXPECT_THROW(GridSpec({3, 3}, {2}, 1), InvalidInput);
  EXPECT_THROW(GridSpec({}, {}, 1), InvalidInput);
}

TEST(GridSpecTest, Homogeneous) {
  EXPECT_TRUE(GridSpec::homogeneous(4, 3, 2, 2).homogeneous());
  EXPECT_FALSE(GridSpec({3, 4}, {2, 2}, 1).homogeneous());
  EXPECT_FALSE(GridSpec({4, 4}, {2, 3}, 1).homogeneous());
  EXPECT_EQ(GridSpec::homogeneous(4, 3, 2, 2), GridSpec({4, 4, 4}, {2, 2, 2}, 2));
}

TEST(CodecTest, Examples) {
  const auto s33 = GridSpec::homogeneous(3, 2, 2, 2);
  EXPECT_EQ(encode(MultiIndex{{1, 1}}, s33), 0u);
  EXPECT_EQ(encode(MultiIndex{{2, 3}}, s33), 5u);
  EXPECT_EQ(decode(7, GridSpec::homogeneous(2, 3, 2, 1)), (MultiIndex{{2, 2, 2}}));
  EXPECT_EQ((MultiIndex{{2, 3, 1}}).weight(), 6);
}

TEST(CodecTest, Errors) {
  const auto s = GridSpec::homogeneous(3, 2, 2, 2);
  EXPECT_THROW(encode(MultiIndex{{0, 1}}, s), InvalidInput);
  EXPECT_THROW(encode(MultiIndex{{1, 4}}, s), InvalidInput);
  EXPECT_THROW(encode(MultiIndex{{1}}, s), InvalidInput);
  EXPECT_THROW(decode(9, s), InvalidInput);
}

TEST(CodecTest, BijectionAndRowMajorFormula) {
  for (const auto& spec : small_specs()) {
    std::uint64_t expect = 0;
    for_each_vertex(spec, [&](const MultiIndex& v) {
      std::uint64_t id = 0, stride = 1;
      for (std::size_t k = spec.d(); k-- > 0;) {
        id += static_cast<std::uint64_t>(v[k] - 1) * stride;
        stride *= static_cast<std::uint64_t>(spec.n(k));
      }
      ASSERT_EQ(id, expect);
      ASSERT_EQ(encode(v, spec), id);
      ASSERT_EQ(decode(id, spec), v);
      ++expect;
    });
    EXPECT_EQ(expect, spec.num_vertices());
  }
}

TEST(EdgeEnumerationTest, Examples) {
  EXPECT_EQ(enumerate_edges(GridSpec::homogeneous(3, 2, 2, 2), Family::K).size(), 9u);
  const auto squares = enumerate_edges(GridSpec::homogeneous(3, 2, 2, 2), Family::P);
  ASSERT_EQ(squares.size(), 4u);
  for (const auto& e : squares) EXPECT_EQ(e.size(), 4u);

  const auto single = enumerate_edges(GridSpec::homogeneous(2, 1, 2, 1), Family::K);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].values[0], (std::vector<int>{1, 2}));

  EXPECT_EQ(count_edges(GridSpec::homogeneous(3, 2, 2, 2), Family::K), 9u);
  EXPECT_EQ(count_edges(GridSpec::homogeneous(3, 2, 2, 2), Family::P), 4u);
  EXPECT_EQ(count_edges(GridSpec::homogeneous(4, 3, 2, 1), Family::K), 288u);
}

TEST(EdgeEnumerationTest, DeterministicOrder) {
  const auto edges = enumerate_edges(GridSpec::homogeneous(3, 2, 2, 1), Family::K);
  // D = {axis 0} first: I_0 = {1,2},{1,3},{2,3}, each with fixed v_2 = 1,2,3
  ASSERT_EQ(edges.size(), 18u);
  EXPECT_EQ(edges[0].varying, std::vector<std::size_t>{0});
  EXPECT_EQ(edges[0].values, (std::vector<std::vector<int>>{{1, 2}, {1}}));
  EXPECT_EQ(edges[1].values, (std::vector<std::vector<int>>{{1, 2}, {2}}));
  EXPECT_EQ(edges[3].values, (std::vector<std::vector<int>>{{1, 3}, {1}}));
  EXPECT_EQ(edges[9].varying, std::vector<std::size_t>{1});
  EXPECT_EQ(edges[9].values, (std::vector<std::vector<int>>{{1}, {1, 2}}));

  const auto full = enumerate_edges(GridSpec::homogeneous(3, 2, 2, 2), Family::K);
  EXPECT_EQ(full[0].values, (std::vector<std::vector<int>>{{1, 2}, {1, 2}}));
  EXPECT_EQ(full[1].values, (std::vector<std::vector<int>>{{1, 2}, {1, 3}}));
  EXPECT_EQ(full[8].values, (std::vector<std::vector<int>>{{2, 3}, {2, 3}}));
}

TEST(EdgeEnumerationTest, MatchesBruteForceOracle) {
  for (const auto& spec : small_specs()) {
    for (Family fam : {Family::K, Family::P}) {
      const auto oracle = brute_force_edges(spec, fam);
      std::set<std::vector<VertexId>> got;
      std::size_t streamed = 0;
      for_each_edge(spec, fam, [&](const GridEdge& e) {
        ++streamed;
        EXPECT_EQ(e.varying.size(), static_cast<std::size_t>(spec.r()));
        for (std::size_t k = 0; k < spec.d(); ++k) {
          const auto& vals = e.values[k];
          EXPECT_EQ(vals.size(), e.is_varying(k) ? static_cast<std::size_t>(spec.t(k)) : 1u);
          if (fam == Family::P) { EXPECT_EQ(vals.back() - vals.front() + 1, static_cast<int>(vals.size())); }
        }
        const auto ids = e.vertex_ids(spec);
        EXPECT_EQ(std::set<VertexId>(ids.begin(), ids.end()).size(), e.size());
        got.insert(ids);
      });
      EXPECT_EQ(got, oracle);
      EXPECT_EQ(streamed, oracle.size()) << "duplicate edges";
      EXPECT_EQ(count_edges(spec, fam), streamed);
    }
  }
}

TEST(EdgeEnumerationTest, CountMatchesStreamUpToTenThousandVertices) {
  for (int d = 1; d <= 4; ++d)
    for (int n = 2; n <= 10; ++n) {
      if (ipow(n, d) > 10'000) continue;
      for (int t = 2; t <= n; ++t)
        for (int r = 1; r <= d; ++r) {
          const auto spec = GridSpec::homogeneous(n, d, t, r);
          for (Family fam : {Family::K, Family::P}) {
            if (count_edges(spec, fam) > 200'000) continue;
            std::uint64_t streamed = 0;
            for_each_edge(spec, fam, [&](const GridEdge&) { ++streamed; });
            ASSERT_EQ(streamed, count_edges(spec, fam)) << n << ' ' << d << ' ' << t << ' ' << r;
          }
        }
    }
}

TEST(EdgeEnumerationTest, EarlyStop) {
  int seen = 0;
  for_each_edge(GridSpec::homogeneous(4, 3, 2, 2), Family::K, [&](const GridEdge&) { return ++seen < 5; });
  EXPECT_EQ(seen, 5);
}

TEST(EdgeEnumerationTest, IntervalFamilyIsSubfamily) {
  for (const auto& spec : small_specs()) {
    std::set<std::vector<VertexId>> k_edges;
    for_each_edge(spec, Family::K, [&](const GridEdge& e) { k_edges.insert(e.vertex_ids(spec)); });
    for_each_edge(spec, Family::P, [&](const GridEdge& e) { EXPECT_TRUE(k_edges.count(e.vertex_ids(spec))); });
  }
}

TEST(ExtremalSetTest, Examples) {
  const auto u = construct_U(GridSpec::homogeneous(3, 2, 2, 2));
  EXPECT_EQ(u, (std::vector<MultiIndex>{{{1, 1}}, {{1, 2}}, {{1, 3}}, {{2, 1}}, {{3, 1}}}));
  EXPECT_EQ(construct_U(GridSpec::homogeneous(2, 3, 2, 1)), (std::vector<MultiIndex>{{{1, 1, 1}}}));

  const GridSpec inhom({3, 4}, {2, 3}, 2);
  const auto u2 = construct_U(inhom);
  EXPECT_EQ(u2.size(), 8u);
  for (const auto& v : u2) EXPECT_FALSE(v[0] >= 2 && v[1] >= 3);
}

TEST(ExtremalSetTest, SizeExamples) {
  EXPECT_EQ(extremal_size(GridSpec::homogeneous(3, 2, 2, 2)), 5u);
  EXPECT_EQ(extremal_size(GridSpec::homogeneous(5, 3, 3, 2)), 44u);
  EXPECT_EQ(extremal_size(GridSpec({3, 4}, {2, 3}, 2)), 8u);
  EXPECT_EQ(extremal_size(GridSpec::homogeneous(2, 4, 2, 1)), 1u);
}

TEST(ExtremalSetTest, SizeMatchesConstructionExhaustively) {
  for (int d = 1; d <= 4; ++d)
    for (int n = 2; n <= 10; ++n) {
      if (ipow(n, d) > 10'000) continue;
      for (int t = 2; t <= n; ++t)
        for (int r = 1; r <= d; ++r) {
          const auto spec = GridSpec::homogeneous(n, d, t, r);
          // count by decoding ids, independent of for_each_vertex
          std::uint64_t count = 0;
          for (std::uint64_t id = 0; id < spec.num_vertices(); ++id) {
            const auto v = decode(id, spec);
            int large = 0;
            for (int x : v.coords) large += x >= t;
            count += large <= r - 1;
          }
          ASSERT_EQ(construct_U(spec).size(), count);
          ASSERT_EQ(extremal_size(spec), count);
          ASSERT_EQ(homogeneous_extremal_size(n, d, t, r), count);
        }
    }
}

TEST(ExtremalSetTest, InhomogeneousSizeMatchesConstruction) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<int> dims, thick;
    for (int k = 0; k < d; ++k) {
      dims.push_back(std::uniform_int_distribution<int>(2, 7)(rng));
      thick.push_back(std::uniform_int_distribution<int>(2, dims.back())(rng));
    }
    const int r = std::uniform_int_distribution<int>(1, d)(rng);
    const GridSpec spec(dims, thick, r);
    ASSERT_EQ(construct_U(spec).size(), extremal_size(spec));
  }
}

TEST(ExtremalSetTest, FullDimensionIdentity) {
  for (int d = 1; d <= 6; ++d)
    for (int n = 2; n <= 10; ++n)
      for (int t = 2; t <= n; ++t) {
        const auto spec = GridSpec::homogeneous(n, d, t, d);
        ASSERT_EQ(extremal_size(spec), full_dimension_extremal_size(n, d, t));
        ASSERT_EQ(homogeneous_extremal_size(n, d, t, d), full_dimension_extremal_size(n, d, t));
      }
}

TEST(SymmetryTest, OrbitRepresentatives) {
  // K is vertex-transitive when every axis has the same (n, t)
  EXPECT_EQ(orbit_representatives(GridSpec::homogeneous(3, 2, 2, 2), Family::K), std::vector<VertexId>{0});
  // P on [3]^2: corners, edge midpoints, centre
  EXPECT_EQ(orbit_representatives(GridSpec::homogeneous(3, 2, 2, 2), Family::P), (std::vector<VertexId>{0, 1, 4}));
  // unequal axes cannot be swapped
  EXPECT_EQ(orbit_representatives(GridSpec({2, 3}, {2, 2}, 1), Family::P), (std::vector<VertexId>{0, 1}));
}

}  // namespace
}  // namespace bootperc
