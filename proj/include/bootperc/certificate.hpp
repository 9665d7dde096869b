#pragma once

// Linear-algebraic lower bound for m(K) and m(P).
//
// W has basis {e_u : u in U}. For every vertex v and every set P of
// p = d-r+1 axes, f^(P)_v sums prod_a M^(k_a)[v_{k_a}, j_a] e_{pi(v)} over
// all small values j_a, where pi(v) sets each axis k_a in P to j_a; then
// f_v = sum_P f^(P)_v. An edge S gets weights lambda_{S,v} as the product of
// the per-axis dependency coefficients of its value sets. If the f_v span W
// and every edge satisfies sum_{v in S} lambda_{S,v} f_v = 0 with all
// weights nonzero, no set smaller than dim W = |U| can percolate.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bootperc/closure.hpp"
#include "bootperc/combinatorics.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/exact_algebra.hpp"
#include "bootperc/grid.hpp"

namespace bootperc {

/// Sparse vector over W: (basis position, coefficient), positions ascending.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

class CertificateContext {
 public:
  /// Uses build_general_position_matrix(n_k, t_k) on every axis.
  explicit CertificateContext(GridSpec spec, Family family = Family::K)
      : CertificateContext(spec, family, default_matrices(spec)) {}

  CertificateContext(GridSpec spec, Family family, std::vector<RationalMatrix> axis_matrices)
      : spec_(std::move(spec)), family_(family), axis_matrices_(std::move(axis_matrices)) {
    if (axis_matrices_.size() != spec_.d())
      throw InvalidInput("need one axis matrix per coordinate");
    for (std::size_t k = 0; k < spec_.d(); ++k) {
      const auto& m = axis_matrices_[k];
      if (m.rows() != static_cast<std::size_t>(spec_.n(k)) || m.cols() != static_cast<std::size_t>(spec_.t(k) - 1))
        throw InvalidInput("axis " + std::to_string(k + 1) + " matrix must be " + std::to_string(spec_.n(k)) +
                           " x " + std::to_string(spec_.t(k) - 1));
    }
    u_position_.assign(static_cast<std::size_t>(spec_.num_vertices()), npos);
    std::uint64_t id = 0;
    for_each_vertex(spec_, [&](const MultiIndex& v) {
      if (in_extremal_set(v, spec_)) {
        u_position_[id] = u_vertices_.size();
        u_vertices_.push_back(static_cast<VertexId>(id));
      }
      ++id;
    });
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const GridSpec& spec() const noexcept { return spec_; }
  Family family() const noexcept { return family_; }
  const std::vector<RationalMatrix>& axis_matrices() const noexcept { return axis_matrices_; }
  const RationalMatrix& axis_matrix(std::size_t k) const { return axis_matrices_.at(k); }

  /// Number of axes projected out by each component, d - r + 1.
  std::size_t projected_count() const { return spec_.d() - static_cast<std::size_t>(spec_.r()) + 1; }

  std::size_t u_size() const noexcept { return u_vertices_.size(); }
  const std::vector<VertexId>& u_vertices() const noexcept { return u_vertices_; }
  /// Basis position of a vertex id, or npos when the vertex is not in U.
  std::size_t u_position(std::uint64_t id) const { return u_position_.at(id); }

 private:
  static std::vector<RationalMatrix> default_matrices(const GridSpec& spec) {
    std::vector<RationalMatrix> ms;
    for (std::size_t k = 0; k < spec.d(); ++k) ms.push_back(build_general_position_matrix(spec.n(k), spec.t(k)));
    return ms;
  }

  GridSpec spec_;
  Family family_;
  std::vector<RationalMatrix> axis_matrices_;
  std::vector<std::size_t> u_position_;
  std::vector<VertexId> u_vertices_;
};

/// Sets coordinate axes[a] of v to values[a]. Axes are 0-based and distinct.
inline MultiIndex project(const MultiIndex& v, std::span<const std::size_t> axes, std::span<const int> values,
                          const GridSpec& spec) {
  if (axes.size() != values.size()) throw InvalidInput("projection axes and values differ in length");
  MultiIndex out = v;
  std::vector<char> seen(spec.d(), 0);
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const std::size_t k = axes[a];
    if (k >= spec.d()) throw InvalidInput("projection axis out of range");
    if (seen[k]) throw InvalidInput("projection repeats axis " + std::to_string(k + 1));
    seen[k] = 1;
    if (values[a] < 1 || values[a] > spec.n(k))
      throw InvalidInput("projection value " + std::to_string(values[a]) + " outside axis " +
                         std::to_string(k + 1));
    out[k] = values[a];
  }
  return out;
}

/// f^(P)_v in sparse form. `axes` is P (0-based, ascending, size d-r+1).
inline SparseVector f_component_sparse(const MultiIndex& v, std::span<const std::size_t> axes,
                                       const CertificateContext& ctx) {
  const GridSpec& spec = ctx.spec();
  if (axes.size() != ctx.projected_count())
    throw InvalidInput("component needs " + std::to_string(ctx.projected_count()) + " projected axes, got " +
                       std::to_string(axes.size()));
  std::map<std::size_t, Rational> acc;
  std::vector<int> js(axes.size(), 1);
  while (true) {
    Rational coeff = 1;
    for (std::size_t a = 0; a < axes.size() && coeff != 0; ++a)
      coeff *= ctx.axis_matrix(axes[a])(static_cast<std::size_t>(v[axes[a]] - 1), static_cast<std::size_t>(js[a] - 1));
    if (coeff != 0) {
      const MultiIndex target = project(v, axes, js, spec);
      const std::size_t pos = ctx.u_position(encode(target, spec));
      if (pos == CertificateContext::npos)
        throw CertificateInvalid("projection of a vertex left the extremal set");
      acc[pos] += coeff;
    }
    std::size_t a = axes.size();
    bool done = true;
    while (a > 0) {
      --a;
      if (++js[a] <= spec.t(axes[a]) - 1) {
        done = false;
        break;
      }
      js[a] = 1;
    }
    if (done) break;
  }
  SparseVector out;
  for (auto& [pos, c] : acc)
    if (c != 0) out.emplace_back(pos, std::move(c));
  return out;
}

inline RationalVector densify(const SparseVector& s, std::size_t dim) {
  RationalVector out(dim);
  for (const auto& [pos, c] : s) out[pos] += c;
  return out;
}

inline RationalVector f_component(const MultiIndex& v, std::span<const std::size_t> axes,
                                  const CertificateContext& ctx) {
  return densify(f_component_sparse(v, axes, ctx), ctx.u_size());
}

inline RationalVector f_vector(const MultiIndex& v, const CertificateContext& ctx) {
  RationalVector out(ctx.u_size());
  for_each_combination<std::size_t>(ctx.spec().d(), ctx.projected_count(), [&](const std::vector<std::size_t>& axes) {
    for (const auto& [pos, c] : f_component_sparse(v, axes, ctx)) out[pos] += c;
  });
  return out;
}

/// lambda_{S,v}: product over varying axes l of the dependency coefficient of
/// I_l at the position of v_l.
inline Rational edge_coefficient(const GridEdge& edge, const MultiIndex& v, const CertificateContext& ctx) {
  if (!edge.contains(v)) throw InvalidInput("vertex is not in the edge");
  Rational out = 1;
  for (std::size_t axis : edge.varying) {
    const auto& values = edge.values[axis];
    const auto lambda = dependency_coeffs(ctx.axis_matrix(axis), values);
    const auto pos = std::lower_bound(values.begin(), values.end(), v[axis]) - values.begin();
    out *= lambda[static_cast<std::size_t>(pos)];
  }
  return out;
}

struct Certificate {
  CertificateContext context;
  /// f_v for every vertex, indexed by vertex id, each of length |U|.
  std::vector<RationalVector> f_vectors;
  bool general_position = false;
  bool verified_span = false;
  bool verified_dependencies = false;
  std::size_t f_rank = 0;
  std::uint64_t edges_checked = 0;
  std::uint64_t lower_bound = 0;
  /// First failed check, empty when everything verified.
  std::string failure;

  bool verified() const { return general_position && verified_span && verified_dependencies; }
};

struct CertifyOptions {
  /// Worker threads for the per-edge dependency checks.
  unsigned jobs = 1;
};

namespace detail {

// Dependency coefficients of every t_k-subset of every axis.
using LambdaTable = std::vector<std::map<std::vector<int>, RationalVector>>;

inline LambdaTable lambda_table(const CertificateContext& ctx) {
  const GridSpec& spec = ctx.spec();
  LambdaTable table(spec.d());
  for (std::size_t k = 0; k < spec.d(); ++k) {
    for_each_combination<int>(spec.n(k), static_cast<std::size_t>(spec.t(k)), [&](const std::vector<int>& c) {
      std::vector<int> rows(c);
      for (int& x : rows) ++x;
      table[k].emplace(rows, dependency_coeffs(ctx.axis_matrix(k), rows));
    });
  }
  return table;
}

// Returns an empty string when sum_{v in S} lambda_{S,v} f^(P)_v = 0 for every P.
inline std::string check_edge(const GridEdge& edge, const CertificateContext& ctx, const LambdaTable& lambdas,
                              const std::vector<std::vector<SparseVector>>& components,
                              std::vector<Rational>& scratch, std::vector<std::size_t>& touched) {
  const GridSpec& spec = ctx.spec();
  const auto verts = edge.vertices();
  std::vector<Rational> weights;
  std::vector<std::uint64_t> ids;
  weights.reserve(verts.size());
  for (const auto& v : verts) {
    Rational w = 1;
    for (std::size_t axis : edge.varying) {
      const auto& values = edge.values[axis];
      const auto pos = std::lower_bound(values.begin(), values.end(), v[axis]) - values.begin();
      w *= lambdas[axis].at(values)[static_cast<std::size_t>(pos)];
    }
    if (w == 0) return "zero edge coefficient";
    weights.push_back(std::move(w));
    ids.push_back(encode(v, spec));
  }
  for (std::size_t p = 0; p < components.size(); ++p) {
    touched.clear();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (const auto& [pos, c] : components[p][ids[i]]) {
        if (scratch[pos] == 0) touched.push_back(pos);
        scratch[pos] += weights[i] * c;
      }
    }
    bool zero = true;
    for (std::size_t pos : touched) {
      if (scratch[pos] != 0) zero = false;
      scratch[pos] = 0;
    }
    if (!zero) return "nonzero dependency residual for projected-axis set #" + std::to_string(p);
  }
  return {};
}

inline std::string describe(const GridEdge& edge) {
  std::string s = "{";
  for (std::size_t k = 0; k < edge.values.size(); ++k) {
    s += k ? " x {" : "{";
    for (std::size_t i = 0; i < edge.values[k].size(); ++i) s += (i ? "," : "") + std::to_string(edge.values[k][i]);
    s += "}";
  }
  return s + "}";
}

}  // namespace detail

/// Builds every f_v and runs all exact checks. Never throws on a failed
/// check; the flags and `failure` say what went wrong. Dependencies are
/// always checked over every edge of K, which contains P.
inline Certificate build_certificate(const CertificateContext& ctx, const CertifyOptions& opts = {}) {
  const GridSpec& spec = ctx.spec();
  Certificate cert{ctx, {}, false, false, false, 0, 0, 0, {}};
  auto fail = [&](std::string msg) {
    if (cert.failure.empty()) cert.failure = std::move(msg);
  };

  cert.general_position = true;
  for (std::size_t k = 0; k < spec.d(); ++k) {
    if (!verify_general_position(ctx.axis_matrix(k), spec.t(k))) {
      cert.general_position = false;
      fail("axis " + std::to_string(k + 1) + " matrix is not in general position");
    }
  }

  // components[p][id] = f^(P_p)_v
  std::vector<std::vector<std::size_t>> axis_sets;
  for_each_combination<std::size_t>(spec.d(), ctx.projected_count(),
                                    [&](const std::vector<std::size_t>& axes) { axis_sets.push_back(axes); });
  const auto nv = static_cast<std::size_t>(spec.num_vertices());
  std::vector<std::vector<SparseVector>> components(axis_sets.size(), std::vector<SparseVector>(nv));
  cert.f_vectors.assign(nv, RationalVector(ctx.u_size()));
  std::uint64_t id = 0;
  for_each_vertex(spec, [&](const MultiIndex& v) {
    for (std::size_t p = 0; p < axis_sets.size(); ++p) {
      components[p][id] = f_component_sparse(v, axis_sets[p], ctx);
      for (const auto& [pos, c] : components[p][id]) cert.f_vectors[id][pos] += c;
    }
    ++id;
  });

  cert.f_rank = rank(RationalMatrix::from_rows(cert.f_vectors));
  cert.verified_span = cert.f_rank == ctx.u_size();
  if (!cert.verified_span)
    fail("f-vectors have rank " + std::to_string(cert.f_rank) + ", expected " + std::to_string(ctx.u_size()));

  detail::LambdaTable lambdas;
  try {
    lambdas = detail::lambda_table(ctx);
  } catch (const CertificateInvalid& e) {
    fail(e.what());
    return cert;
  }

  const auto edges = enumerate_edges(spec, Family::K);
  cert.edges_checked = edges.size();
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(std::max<std::size_t>(edges.size(), 1))));
  // first failing edge index per worker, edges.size() if none
  std::vector<std::size_t> first_bad(jobs, edges.size());
  std::vector<std::string> reasons(jobs);
  auto worker = [&](unsigned w) {
    std::vector<Rational> scratch(ctx.u_size());
    std::vector<std::size_t> touched;
    const std::size_t lo = edges.size() * w / jobs, hi = edges.size() * (w + 1) / jobs;
    for (std::size_t e = lo; e < hi; ++e) {
      auto why = detail::check_edge(edges[e], ctx, lambdas, components, scratch, touched);
      if (!why.empty()) {
        first_bad[w] = e;
        reasons[w] = std::move(why);
        return;
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
    for (auto& th : threads) th.join();
  }
  const auto bad = std::min_element(first_bad.begin(), first_bad.end()) - first_bad.begin();
  cert.verified_dependencies = first_bad[static_cast<std::size_t>(bad)] == edges.size();
  if (!cert.verified_dependencies)
    fail("edge " + detail::describe(edges[first_bad[static_cast<std::size_t>(bad)]]) + ": " +
         reasons[static_cast<std::size_t>(bad)]);

  if (cert.verified()) cert.lower_bound = ctx.u_size();
  return cert;
}

/// Certificate for m(K) >= |U| (and hence m(P) >= |U|) with the default axis
/// matrices. Throws CertificateInvalid if any check fails.
inline Certificate certified_lower_bound(const GridSpec& spec, Family family = Family::K,
                                         const CertifyOptions& opts = {}) {
  Certificate cert = build_certificate(CertificateContext(spec, family), opts);
  if (!cert.verified()) throw CertificateInvalid("certificate failed: " + cert.failure);
  return cert;
}

struct AuditStep {
  VertexId vertex;
  std::size_t witness_edge;
  bool in_span;
};

struct AuditReport {
  bool percolated = false;
  std::size_t initial_size = 0;
  std::size_t u_size = 0;
  /// Rank of {f_a : a in A}.
  std::size_t seed_rank = 0;
  std::vector<AuditStep> steps;
  bool all_steps_in_span = true;
  /// Percolated, the seed already spans W, and so |A| >= |U|.
  bool bound_holds = false;
};

/// Replays the closure of A and checks that every newly infected vertex
/// contributes nothing new to span{f_a : a in A}.
inline AuditReport audit_percolating_set(const Certificate& cert, Family family, std::vector<VertexId> initial) {
  if (!cert.verified()) throw InvalidInput("audit needs a verified certificate");
  const auto& ctx = cert.context;
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());

  const Hypergraph h = grid_hypergraph(ctx.spec(), family);
  const ClosureResult closed = closure(h, initial);

  AuditReport report;
  report.percolated = closed.percolated(h);
  report.initial_size = initial.size();
  report.u_size = ctx.u_size();
  EliminationBasis basis(ctx.u_size());
  for (VertexId a : initial) basis.insert(cert.f_vectors.at(a));
  report.seed_rank = basis.rank();
  for (const auto& step : closed.trace) {
    const bool grew = basis.insert(cert.f_vectors[step.vertex]);
    report.steps.push_back({step.vertex, step.witness_edge, !grew});
    if (grew) report.all_steps_in_span = false;
  }
  report.bound_holds = report.percolated && report.all_steps_in_span && report.seed_rank == report.u_size &&
                       report.initial_size >= report.u_size;
  return report;
}

}  // namespace bootperc
