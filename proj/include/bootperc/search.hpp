#pragma once

// Exhaustive and randomized searches for small percolating sets. These are
// deliberately independent of the certificate code: the hypergraph tester
// below uses its own bitmask fixpoint rather than the queue-based closure.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <utility>
#include <vector>

#include "bootperc/closure.hpp"
#include "bootperc/combinatorics.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/hypergraph.hpp"

namespace bootperc {

struct SearchOptions {
  /// Maximum number of candidate sets tested (one closure each).
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
  /// Put vertices that can never become infected into every candidate.
  bool mandatory_preprocessing = true;
  /// Orbit representatives of an automorphism group; when non-empty only
  /// candidates meeting this set are tested. Correctness depends on the
  /// caller passing genuine orbit representatives.
  std::vector<VertexId> symmetry_representatives;
};

struct SearchResult {
  std::size_t minimum = 0;
  std::vector<VertexId> witness;
  /// Candidate sets tested, counted as a single sequential run would.
  std::uint64_t candidates = 0;
  /// True when every smaller size was ruled out by enumeration.
  bool exhaustive = false;
};

/// Percolation test for hypergraphs. Up to 64 vertices it iterates a bitmask
/// fixpoint over the edges; larger inputs fall back to closure().
class HypergraphTester {
 public:
  explicit HypergraphTester(const Hypergraph& h) : h_(&h) {
    if (h.num_vertices() <= 64) {
      for (const auto& e : h.edges()) {
        std::uint64_t m = 0;
        for (VertexId v : e) m |= std::uint64_t{1} << v;
        masks_.push_back(m);
      }
      full_ = h.num_vertices() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h.num_vertices()) - 1;
    }
  }

  std::size_t num_vertices() const { return h_->num_vertices(); }

  bool operator()(const std::vector<VertexId>& set) const {
    if (h_->num_vertices() > 64) return percolates(*h_, set);
    std::uint64_t infected = 0;
    for (VertexId v : set) infected |= std::uint64_t{1} << v;
    bool changed = true;
    while (changed && infected != full_) {
      changed = false;
      for (std::uint64_t m : masks_) {
        const std::uint64_t miss = m & ~infected;
        if (miss != 0 && (miss & (miss - 1)) == 0) {
          infected |= miss;
          changed = true;
        }
      }
    }
    return infected == full_;
  }

  /// Vertices in no edge; they can only be infected initially.
  std::vector<VertexId> mandatory() const {
    std::vector<char> covered(h_->num_vertices(), 0);
    for (const auto& e : h_->edges())
      for (VertexId v : e) covered[v] = 1;
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < covered.size(); ++v)
      if (!covered[v]) out.push_back(static_cast<VertexId>(v));
    return out;
  }

 private:
  const Hypergraph* h_;
  std::vector<std::uint64_t> masks_;
  std::uint64_t full_ = 0;
};

class RNeighbourTester {
 public:
  RNeighbourTester(const Graph& g, int r) : g_(&g), r_(r) {
    if (r < 1) throw InvalidInput("r-neighbour threshold must be at least 1");
  }

  std::size_t num_vertices() const { return g_->num_vertices(); }

  bool operator()(const std::vector<VertexId>& set) const {
    return rn_closure(*g_, set, r_).size() == g_->num_vertices();
  }

  /// Vertices of degree below r can never be infected by neighbours.
  std::vector<VertexId> mandatory() const {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < g_->num_vertices(); ++v)
      if (g_->degree(static_cast<VertexId>(v)) < static_cast<std::size_t>(r_)) out.push_back(static_cast<VertexId>(v));
    return out;
  }

 private:
  const Graph* g_;
  int r_;
};

namespace detail {

// Tests all candidates of sizes lower..upper in lexicographic order, in waves
// of consecutive candidates split across workers. The reported witness and
// candidate count equal those of a sequential run whatever the worker count.
template <typename Tester>
std::pair<std::optional<SearchResult>, std::uint64_t> level_search(const Tester& test, std::size_t lower, std::size_t upper,
                                         const SearchOptions& opts) {
  const std::size_t nv = test.num_vertices();
  if (lower > upper || upper > nv) throw InvalidInput("search hints must satisfy 0 <= lower <= upper <= |V|");

  std::vector<VertexId> mandatory;
  if (opts.mandatory_preprocessing) mandatory = test.mandatory();
  std::vector<char> is_mandatory(nv, 0), is_rep(nv, 0);
  for (VertexId v : mandatory) is_mandatory[v] = 1;
  for (VertexId v : opts.symmetry_representatives) {
    if (v >= nv) throw InvalidInput("symmetry representative out of range");
    is_rep[v] = 1;
  }
  const bool prune = !opts.symmetry_representatives.empty() &&
                     std::none_of(mandatory.begin(), mandatory.end(), [&](VertexId v) { return is_rep[v]; });
  std::vector<VertexId> free;
  for (std::size_t v = 0; v < nv; ++v)
    if (!is_mandatory[v]) free.push_back(static_cast<VertexId>(v));

  const unsigned jobs = std::max(1u, opts.jobs);
  const std::size_t wave_cap = std::size_t{jobs} * 256;
  std::uint64_t tested = 0;
  // every smaller size is ruled out only if enumeration started at the
  // smallest size that could possibly work
  const bool exhaustive = lower <= mandatory.size();

  for (std::size_t k = std::max(lower, mandatory.size()); k <= upper; ++k) {
    const std::size_t m = k - mandatory.size();
    if (m > free.size()) break;
    std::vector<std::size_t> comb(m);
    std::iota(comb.begin(), comb.end(), std::size_t{0});
    bool more = true;
    std::vector<std::vector<VertexId>> wave;
    while (more) {
      wave.clear();
      while (more && wave.size() < wave_cap) {
        if (tested + wave.size() >= opts.budget) {
          if (wave.empty()) throw BudgetExceeded(opts.budget);
          break;
        }
        std::vector<VertexId> set = mandatory;
        for (std::size_t i : comb) set.push_back(free[i]);
        if (!prune || std::any_of(set.begin(), set.end(), [&](VertexId v) { return is_rep[v]; })) {
          std::sort(set.begin(), set.end());
          wave.push_back(std::move(set));
        }
        more = next_combination(comb, free.size());
      }
      std::size_t hit = wave.size();
      if (jobs == 1 || wave.size() < 2) {
        for (std::size_t i = 0; i < wave.size(); ++i)
          if (test(wave[i])) {
            hit = i;
            break;
          }
      } else {
        const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, wave.size()));
        std::vector<std::size_t> first(workers, wave.size());
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) {
          threads.emplace_back([&, w] {
            Tester local = test;
            const std::size_t lo = wave.size() * w / workers, hi = wave.size() * (w + 1) / workers;
            for (std::size_t i = lo; i < hi; ++i)
              if (local(wave[i])) {
                first[w] = i;
                return;
              }
          });
        }
        for (auto& th : threads) th.join();
        hit = *std::min_element(first.begin(), first.end());
      }
      if (hit < wave.size()) {
        tested += hit + 1;
        return {SearchResult{k, wave[hit], tested, exhaustive}, tested};
      }
      tested += wave.size();
      if (more && tested >= opts.budget) throw BudgetExceeded(opts.budget);
    }
  }
  return {std::nullopt, tested};
}

template <typename Tester>
std::vector<VertexId> greedy_deletion(const Tester& test, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidInput("greedy search needs at least one trial");
  const std::size_t nv = test.num_vertices();
  std::mt19937_64 rng(seed);
  std::vector<VertexId> best(nv);
  std::iota(best.begin(), best.end(), VertexId{0});
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<VertexId> order(nv);
    std::iota(order.begin(), order.end(), VertexId{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> in(nv, 1);
    for (VertexId v : order) {
      in[v] = 0;
      std::vector<VertexId> set;
      for (std::size_t u = 0; u < nv; ++u)
        if (in[u]) set.push_back(static_cast<VertexId>(u));
      if (!test(set)) in[v] = 1;
    }
    std::vector<VertexId> set;
    for (std::size_t u = 0; u < nv; ++u)
      if (in[u]) set.push_back(static_cast<VertexId>(u));
    if (set.size() < best.size()) best = std::move(set);
  }
  return best;
}

}  // namespace detail

/// Smallest percolating set by enumerating k-subsets for k = lower, lower+1,
/// ..., upper in lexicographic order. Returns nullopt if nothing up to
/// `upper` percolates; throws BudgetExceeded rather than guessing.
inline std::optional<SearchResult> min_percolating_exact(const Hypergraph& h, std::size_t lower, std::size_t upper,
                                                         const SearchOptions& opts = {}) {
  return detail::level_search(HypergraphTester(h), lower, upper, opts).first;
}

inline SearchResult min_percolating_exact(const Hypergraph& h, const SearchOptions& opts = {}) {
  return *min_percolating_exact(h, 0, h.num_vertices(), opts);
}

/// Uses a known lower bound and a candidate of that size: if the candidate
/// percolates it is optimal. Otherwise falls back to enumeration from the
/// bound. With `confirm_below`, also checks exhaustively that nothing of size
/// bound-1 percolates.
inline SearchResult certificate_assisted_search(const Hypergraph& h, std::size_t lower_bound,
                                                const std::vector<VertexId>& candidate, bool confirm_below,
                                                const SearchOptions& opts = {}) {
  SearchResult out;
  const HypergraphTester test(h);
  if (candidate.size() == lower_bound && test(candidate)) {
    out = SearchResult{lower_bound, candidate, 1, false};
    std::sort(out.witness.begin(), out.witness.end());
  } else {
    auto found = min_percolating_exact(h, lower_bound, h.num_vertices(), opts);
    out = *found;
  }
  if (confirm_below && lower_bound > 0) {
    auto [below, tested] = detail::level_search(test, lower_bound - 1, lower_bound - 1, opts);
    if (below) throw CertificateInvalid("a percolating set smaller than the certified bound exists");
    out.exhaustive = true;
    out.candidates += tested;
  }
  return out;
}

/// A percolating set found by randomized greedy deletion from V: in a random
/// order, drop each vertex whose removal keeps the set percolating. Keeps the
/// smallest result over all trials; deterministic for a given seed.
inline std::vector<VertexId> greedy_upper_bound(const Hypergraph& h, int trials, std::uint64_t seed) {
  return detail::greedy_deletion(HypergraphTester(h), trials, seed);
}

inline std::vector<VertexId> greedy_rn_upper_bound(const Graph& g, int r, int trials, std::uint64_t seed) {
  return detail::greedy_deletion(RNeighbourTester(g, r), trials, seed);
}

/// m(G, r) by exhaustive enumeration.
inline std::optional<SearchResult> min_rn_percolating(const Graph& g, int r, const SearchOptions& opts = {}) {
  return detail::level_search(RNeighbourTester(g, r), 0, g.num_vertices(), opts).first;
}

}  // namespace bootperc
