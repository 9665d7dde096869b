#pragma once

// Grid hypergraph families on [n_1] x ... x [n_d].
//
// An edge of family K is a product I_1 x ... x I_d in which exactly r of the
// factors have t_k elements and the others are singletons. Family P is the
// subfamily whose non-singleton factors are intervals. Coordinates are 1-based
// throughout; only the vertex id codec deals in 0-based ids.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "bootperc/combinatorics.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/hypergraph.hpp"

namespace bootperc {

enum class Family { K, P };

inline std::string_view to_string(Family f) { return f == Family::K ? "K" : "P"; }

inline Family parse_family(std::string_view s) {
  if (s == "K" || s == "k") return Family::K;
  if (s == "P" || s == "p") return Family::P;
  throw InvalidInput("unknown family '" + std::string(s) + "' (expected K or P)");
}

/// Side lengths n_k, edge thicknesses t_k and copy dimension r of a grid
/// hypergraph. Always stored per axis; the homogeneous case just repeats.
class GridSpec {
 public:
  GridSpec(std::vector<int> dims, std::vector<int> thick, int r)
      : dims_(std::move(dims)), thick_(std::move(thick)), r_(r) {
    if (dims_.empty()) throw InvalidInput("grid needs at least one axis");
    if (dims_.size() != thick_.size())
      throw InvalidInput("dims and thickness lists differ in length (" + std::to_string(dims_.size()) +
                         " vs " + std::to_string(thick_.size()) + ")");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      if (thick_[k] < 2 || thick_[k] > dims_[k])
        throw InvalidInput("axis " + std::to_string(k + 1) + ": need 2 <= t <= n, got n=" +
                           std::to_string(dims_[k]) + " t=" + std::to_string(thick_[k]));
    }
    if (r_ < 1 || r_ > static_cast<int>(dims_.size()))
      throw InvalidInput("need 1 <= r <= d, got r=" + std::to_string(r_) + " d=" +
                         std::to_string(dims_.size()));
    num_vertices_ = 1;
    for (int n : dims_) num_vertices_ = checked_mul(num_vertices_, static_cast<std::uint64_t>(n));
  }

  static GridSpec homogeneous(int n, int d, int t, int r) {
    if (d < 1) throw InvalidInput("need d >= 1");
    return GridSpec(std::vector<int>(d, n), std::vector<int>(d, t), r);
  }

  std::size_t d() const noexcept { return dims_.size(); }
  int r() const noexcept { return r_; }
  int n(std::size_t k) const { return dims_.at(k); }
  int t(std::size_t k) const { return thick_.at(k); }
  const std::vector<int>& dims() const noexcept { return dims_; }
  const std::vector<int>& thick() const noexcept { return thick_; }
  std::uint64_t num_vertices() const noexcept { return num_vertices_; }

  bool homogeneous() const {
    return std::adjacent_find(dims_.begin(), dims_.end(), std::not_equal_to<>()) == dims_.end() &&
           std::adjacent_find(thick_.begin(), thick_.end(), std::not_equal_to<>()) == thick_.end();
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  std::vector<int> dims_;
  std::vector<int> thick_;
  int r_;
  std::uint64_t num_vertices_ = 0;
};

struct MultiIndex {
  std::vector<int> coords;

  /// Coordinate sum |v|.
  long weight() const { return std::accumulate(coords.begin(), coords.end(), 0L); }

  std::size_t size() const noexcept { return coords.size(); }
  int operator[](std::size_t k) const { return coords[k]; }
  int& operator[](std::size_t k) { return coords[k]; }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

// Row-major: id = sum_k (v_k - 1) * prod_{l>k} n_l.
inline std::uint64_t encode(const MultiIndex& v, const GridSpec& spec) {
  if (v.size() != spec.d())
    throw InvalidInput("multi-index has " + std::to_string(v.size()) + " coordinates, grid has " +
                       std::to_string(spec.d()));
  std::uint64_t id = 0;
  for (std::size_t k = 0; k < spec.d(); ++k) {
    if (v[k] < 1 || v[k] > spec.n(k))
      throw InvalidInput("coordinate " + std::to_string(k + 1) + " = " + std::to_string(v[k]) +
                         " outside [1, " + std::to_string(spec.n(k)) + "]");
    id = id * static_cast<std::uint64_t>(spec.n(k)) + static_cast<std::uint64_t>(v[k] - 1);
  }
  return id;
}

inline MultiIndex decode(std::uint64_t id, const GridSpec& spec) {
  if (id >= spec.num_vertices())
    throw InvalidInput("vertex id " + std::to_string(id) + " outside [0, " +
                       std::to_string(spec.num_vertices()) + ")");
  MultiIndex v{std::vector<int>(spec.d())};
  for (std::size_t k = spec.d(); k-- > 0;) {
    const auto n = static_cast<std::uint64_t>(spec.n(k));
    v[k] = static_cast<int>(id % n) + 1;
    id /= n;
  }
  return v;
}

/// Number of large coordinates (v_k >= t_k).
inline int large_count(const MultiIndex& v, const GridSpec& spec) {
  int large = 0;
  for (std::size_t k = 0; k < spec.d(); ++k) large += v[k] >= spec.t(k) ? 1 : 0;
  return large;
}

inline bool in_extremal_set(const MultiIndex& v, const GridSpec& spec) {
  return large_count(v, spec) <= spec.r() - 1;
}

/// Calls fn(const MultiIndex&) for every vertex in id order.
template <typename Fn>
void for_each_vertex(const GridSpec& spec, Fn&& fn) {
  MultiIndex v{std::vector<int>(spec.d(), 1)};
  for (std::uint64_t id = 0; id < spec.num_vertices(); ++id) {
    fn(std::as_const(v));
    for (std::size_t k = spec.d(); k-- > 0;) {
      if (++v[k] <= spec.n(k)) break;
      v[k] = 1;
    }
  }
}

/// One edge S = I_1 x ... x I_d of a grid family.
struct GridEdge {
  /// Axes D(S) (0-based, ascending) along which S takes t_k values.
  std::vector<std::size_t> varying;
  /// Per axis: the sorted value set I_k (t_k values on varying axes, one value otherwise).
  std::vector<std::vector<int>> values;

  bool is_varying(std::size_t axis) const {
    return std::binary_search(varying.begin(), varying.end(), axis);
  }

  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& vals : values) s *= vals.size();
    return s;
  }

  bool contains(const MultiIndex& v) const {
    if (v.size() != values.size()) return false;
    for (std::size_t k = 0; k < values.size(); ++k)
      if (!std::binary_search(values[k].begin(), values[k].end(), v[k])) return false;
    return true;
  }

  /// Expands the product in row-major order.
  std::vector<MultiIndex> vertices() const {
    std::vector<MultiIndex> out;
    out.reserve(size());
    std::vector<std::size_t> pos(values.size(), 0);
    while (true) {
      MultiIndex v{std::vector<int>(values.size())};
      for (std::size_t k = 0; k < values.size(); ++k) v[k] = values[k][pos[k]];
      out.push_back(std::move(v));
      std::size_t k = values.size();
      while (k > 0) {
        --k;
        if (++pos[k] < values[k].size()) break;
        pos[k] = 0;
        if (k == 0) return out;
      }
      if (values.empty()) return out;
    }
  }

  std::vector<VertexId> vertex_ids(const GridSpec& spec) const {
    std::vector<VertexId> ids;
    for (const auto& v : vertices()) ids.push_back(static_cast<VertexId>(encode(v, spec)));
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  friend bool operator==(const GridEdge&, const GridEdge&) = default;
};

/// Streams every edge of the family exactly once: varying axis sets D in
/// lexicographic order, then the tuple of value sets (I_l)_{l in D}
/// lexicographically, then the fixed coordinates in row-major order.
/// If fn returns bool, returning false stops the enumeration.
template <typename Fn>
void for_each_edge(const GridSpec& spec, Family family, Fn&& fn) {
  const std::size_t d = spec.d();
  const auto r = static_cast<std::size_t>(spec.r());

  // Value-set choices for one varying axis, in lexicographic order.
  auto choices_for = [&](std::size_t axis) {
    std::vector<std::vector<int>> out;
    const int n = spec.n(axis), t = spec.t(axis);
    if (family == Family::P) {
      for (int a = 1; a + t - 1 <= n; ++a) {
        std::vector<int> iv(t);
        std::iota(iv.begin(), iv.end(), a);
        out.push_back(std::move(iv));
      }
    } else {
      for_each_combination<int>(n, static_cast<std::size_t>(t), [&](const std::vector<int>& c) {
        std::vector<int> iv(c);
        for (int& x : iv) ++x;
        out.push_back(std::move(iv));
      });
    }
    return out;
  };

  bool stop = false;
  for_each_combination<std::size_t>(d, r, [&](const std::vector<std::size_t>& varying) {
    std::vector<std::size_t> fixed;
    for (std::size_t k = 0, j = 0; k < d; ++k) {
      if (j < varying.size() && varying[j] == k) ++j;
      else fixed.push_back(k);
    }
    std::vector<std::vector<std::vector<int>>> choices;
    for (std::size_t axis : varying) choices.push_back(choices_for(axis));

    GridEdge edge;
    edge.varying = varying;
    edge.values.assign(d, {});
    std::vector<std::size_t> cpos(varying.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < varying.size(); ++i) edge.values[varying[i]] = choices[i][cpos[i]];
      std::vector<int> fvals(fixed.size(), 1);
      while (true) {
        for (std::size_t i = 0; i < fixed.size(); ++i) edge.values[fixed[i]] = {fvals[i]};
        if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const GridEdge&>, bool>) {
          if (!fn(std::as_const(edge))) {
            stop = true;
            return false;
          }
        } else {
          fn(std::as_const(edge));
        }
        std::size_t i = fixed.size();
        bool carried_out = true;
        while (i > 0) {
          --i;
          if (++fvals[i] <= spec.n(fixed[i])) {
            carried_out = false;
            break;
          }
          fvals[i] = 1;
        }
        if (carried_out) break;
      }
      std::size_t i = varying.size();
      bool carried_out = true;
      while (i > 0) {
        --i;
        if (++cpos[i] < choices[i].size()) {
          carried_out = false;
          break;
        }
        cpos[i] = 0;
      }
      if (carried_out) break;
    }
    return !stop;
  });
}

inline std::vector<GridEdge> enumerate_edges(const GridSpec& spec, Family family) {
  std::vector<GridEdge> out;
  for_each_edge(spec, family, [&](const GridEdge& e) { out.push_back(e); });
  return out;
}

/// Closed-form edge count; agrees with the length of the enumeration.
inline std::uint64_t count_edges(const GridSpec& spec, Family family) {
  std::uint64_t total = 0;
  for_each_combination<std::size_t>(spec.d(), static_cast<std::size_t>(spec.r()),
                                    [&](const std::vector<std::size_t>& varying) {
    std::uint64_t term = 1;
    for (std::size_t k = 0, j = 0; k < spec.d(); ++k) {
      const auto n = static_cast<std::uint64_t>(spec.n(k));
      const auto t = static_cast<std::uint64_t>(spec.t(k));
      if (j < varying.size() && varying[j] == k) {
        ++j;
        term = checked_mul(term, family == Family::K ? binomial(n, t) : n - t + 1);
      } else {
        term = checked_mul(term, n);
      }
    }
    total = checked_add(total, term);
  });
  return total;
}

/// The extremal set U: vertices with at most r-1 large coordinates, in id order.
inline std::vector<MultiIndex> construct_U(const GridSpec& spec) {
  std::vector<MultiIndex> out;
  for_each_vertex(spec, [&](const MultiIndex& v) {
    if (in_extremal_set(v, spec)) out.push_back(v);
  });
  return out;
}

/// Sum over S subset [d], |S| <= r-1, of prod_{k in S}(n_k+1-t_k) * prod_{k not in S}(t_k-1).
inline std::uint64_t extremal_size(const GridSpec& spec) {
  const std::size_t d = spec.d();
  std::uint64_t total = 0;
  for (int s = 0; s <= spec.r() - 1; ++s) {
    for_each_combination<std::size_t>(d, static_cast<std::size_t>(s), [&](const std::vector<std::size_t>& large) {
      std::uint64_t term = 1;
      for (std::size_t k = 0, j = 0; k < d; ++k) {
        if (j < large.size() && large[j] == k) {
          ++j;
          term = checked_mul(term, static_cast<std::uint64_t>(spec.n(k) + 1 - spec.t(k)));
        } else {
          term = checked_mul(term, static_cast<std::uint64_t>(spec.t(k) - 1));
        }
      }
      total = checked_add(total, term);
    });
  }
  return total;
}

/// Homogeneous closed form: sum_{s=0}^{r-1} C(d,s) (t-1)^{d-s} (n+1-t)^s.
inline std::uint64_t homogeneous_extremal_size(int n, int d, int t, int r) {
  std::uint64_t total = 0;
  for (int s = 0; s <= r - 1; ++s) {
    const std::uint64_t term = checked_mul(
        binomial(d, s), checked_mul(ipow(t - 1, d - s), ipow(n + 1 - t, s)));
    total = checked_add(total, term);
  }
  return total;
}

/// n^d - (n+1-t)^d, the r = d special case.
inline std::uint64_t full_dimension_extremal_size(int n, int d, int t) {
  return ipow(n, d) - ipow(n + 1 - t, d);
}

inline Hypergraph grid_hypergraph(const GridSpec& spec, Family family) {
  if (spec.num_vertices() > std::numeric_limits<VertexId>::max())
    throw InvalidInput("grid too large for explicit hypergraph");
  std::vector<std::vector<VertexId>> edges;
  edges.reserve(count_edges(spec, family));
  for_each_edge(spec, family, [&](const GridEdge& e) { edges.push_back(e.vertex_ids(spec)); });
  return Hypergraph(spec.num_vertices(), std::move(edges));
}

inline std::vector<VertexId> vertex_ids(const std::vector<MultiIndex>& vs, const GridSpec& spec) {
  std::vector<VertexId> ids;
  ids.reserve(vs.size());
  for (const auto& v : vs) ids.push_back(static_cast<VertexId>(encode(v, spec)));
  return ids;
}

/// Smallest vertex id of each orbit of the family's automorphism group, as
/// generated by: per-axis value permutations (K) or reflections (P), plus
/// swaps of axes with equal (n_k, t_k). Every vertex set can be mapped onto
/// one containing at least one of these representatives.
inline std::vector<VertexId> orbit_representatives(const GridSpec& spec, Family family) {
  const auto nv = static_cast<std::size_t>(spec.num_vertices());
  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for_each_vertex(spec, [&](const MultiIndex& v) {
    const auto id = static_cast<std::size_t>(encode(v, spec));
    for (std::size_t k = 0; k < spec.d(); ++k) {
      MultiIndex w = v;
      if (family == Family::K) {
        // adjacent transpositions generate the full symmetric group on [n_k]
        if (v[k] < spec.n(k)) {
          w[k] = v[k] + 1;
          unite(id, encode(w, spec));
        }
      } else {
        w[k] = spec.n(k) + 1 - v[k];
        unite(id, encode(w, spec));
      }
      for (std::size_t l = k + 1; l < spec.d(); ++l) {
        if (spec.n(k) != spec.n(l) || spec.t(k) != spec.t(l)) continue;
        MultiIndex s = v;
        std::swap(s[k], s[l]);
        unite(id, encode(s, spec));
      }
    }
  });
  std::vector<VertexId> reps;
  for (std::size_t i = 0; i < nv; ++i)
    if (find(i) == i) reps.push_back(static_cast<VertexId>(i));
  return reps;
}

}  // namespace bootperc
