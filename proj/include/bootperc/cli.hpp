#pragma once

// Command-line driver. Lives in a header so tests can run commands in-process.
//
// Exit codes: 0 success/verified, 1 negative verification or search result,
// 2 invalid input, 3 search budget exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "bootperc/certificate.hpp"
#include "bootperc/closure.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/graph.hpp"
#include "bootperc/grid.hpp"
#include "bootperc/hypergraph.hpp"
#include "bootperc/search.hpp"
#include "bootperc/serialize.hpp"

namespace bootperc {

enum ExitCode : int { kOk = 0, kNegative = 1, kInvalidInput = 2, kBudgetExceeded = 3 };

struct RunConfig {
  std::string command;
  int d = 0;
  int r = 0;
  std::vector<int> n;
  std::vector<int> t;
  std::string family = "K";
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
  bool exhaustive = false;
  bool confirm = false;
  bool symmetry = false;
  bool with_vectors = false;
  bool list = false;
  std::string input;
  std::string export_path;
  std::vector<VertexId> infected;
  bool have_infected = false;
  std::vector<VertexId> drop;
  int hypercube = 0;
  int greedy_trials = 0;
  int wsat_k = 3;
  int n_max = 4;
  int d_max = 3;
  std::uint64_t max_vertices = 64;
  std::uint64_t brute_max_vertices = 16;
  std::string families = "K,P";

  /// A single --n/--t value is broadcast to all d axes.
  GridSpec grid_spec() const {
    if (d < 1) throw InvalidInput("--d must be at least 1");
    auto broadcast = [&](const std::vector<int>& v, const char* name) {
      if (v.size() == 1) return std::vector<int>(static_cast<std::size_t>(d), v.front());
      if (v.size() != static_cast<std::size_t>(d))
        throw InvalidInput(std::string("--") + name + " needs 1 or d=" + std::to_string(d) + " values, got " +
                           std::to_string(v.size()));
      return v;
    };
    return GridSpec(broadcast(n, "n"), broadcast(t, "t"), r);
  }

  SearchOptions search_options() const {
    SearchOptions o;
    o.budget = budget;
    o.jobs = jobs;
    return o;
  }
};

namespace detail {

inline void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

inline void emit(const Json& j, const RunConfig& cfg, std::ostream& out) {
  std::ostringstream buf;
  if (cfg.format == "csv") {
    // scalar top-level fields only
    std::vector<std::string> keys, values;
    for (const auto& [key, value] : j.items()) {
      if (value.is_structured()) continue;
      keys.push_back(key);
      values.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    for (std::size_t i = 0; i < keys.size(); ++i) buf << (i ? "," : "") << keys[i];
    buf << '\n';
    for (std::size_t i = 0; i < values.size(); ++i) buf << (i ? "," : "") << values[i];
    buf << '\n';
  } else {
    buf << j.dump(2) << '\n';
  }
  if (cfg.out_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw InvalidInput("cannot write " + cfg.out_path);
    f << buf.str();
  }
}

inline void write_text(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw InvalidInput("cannot write " + cfg.out_path);
    f << text;
  }
}

inline Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  return read_hypergraph(in);
}

inline int cmd_formula(const RunConfig& cfg, std::ostream& out) {
  const GridSpec spec = cfg.grid_spec();
  Json j{{"spec", to_json(spec)}, {"extremalSize", extremal_size(spec)}};
  if (spec.homogeneous()) {
    const int n = spec.n(0), t = spec.t(0), d = static_cast<int>(spec.d());
    j["homogeneousSum"] = homogeneous_extremal_size(n, d, t, spec.r());
    if (spec.r() == d) j["fullDimensionFormula"] = full_dimension_extremal_size(n, d, t);
  }
  emit(j, cfg, out);
  return kOk;
}

inline int cmd_extremal(const RunConfig& cfg, std::ostream& out) {
  const GridSpec spec = cfg.grid_spec();
  const Family fam = parse_family(cfg.family);
  const auto u = construct_U(spec);
  const auto ids = vertex_ids(u, spec);
  const bool perc = percolates(grid_hypergraph(spec, fam), ids);
  Json coords = Json::array();
  for (const auto& v : u) coords.push_back(v.coords);
  emit(Json{{"spec", to_json(spec)},
            {"family", cfg.family},
            {"uSize", u.size()},
            {"extremalSize", extremal_size(spec)},
            {"percolates", perc},
            {"ids", ids},
            {"vertices", std::move(coords)}},
       cfg, out);
  return perc ? kOk : kNegative;
}

inline int cmd_edges(const RunConfig& cfg, std::ostream& out) {
  const GridSpec spec = cfg.grid_spec();
  const Family fam = parse_family(cfg.family);
  const Hypergraph h = grid_hypergraph(spec, fam);
  if (!cfg.export_path.empty()) {
    std::ofstream f(cfg.export_path);
    if (!f) throw InvalidInput("cannot write " + cfg.export_path);
    write_hypergraph(f, h);
  }
  Json j{{"spec", to_json(spec)},
         {"family", cfg.family},
         {"vertices", h.num_vertices()},
         {"count", h.num_edges()},
         {"countFormula", count_edges(spec, fam)}};
  if (cfg.list) j["edges"] = h.edges();
  emit(j, cfg, out);
  return kOk;
}

inline int cmd_closure(const RunConfig& cfg, std::ostream& out) {
  const Hypergraph h = cfg.input.empty() ? grid_hypergraph(cfg.grid_spec(), parse_family(cfg.family))
                                         : load_hypergraph(cfg.input);
  const ClosureResult c = closure(h, cfg.infected);
  Json j{{"vertices", h.num_vertices()}, {"edges", h.num_edges()}, {"initial", cfg.infected}};
  merge(j, to_json(c, h));
  emit(j, cfg, out);
  return kOk;
}

inline int cmd_certify(const RunConfig& cfg, std::ostream& out) {
  const GridSpec spec = cfg.grid_spec();
  CertifyOptions opts;
  opts.jobs = cfg.jobs;
  const Certificate cert = build_certificate(CertificateContext(spec, parse_family(cfg.family)), opts);
  emit(to_json(cert, cfg.with_vectors), cfg, out);
  return cert.verified() ? kOk : kNegative;
}

inline int cmd_audit(const RunConfig& cfg, std::ostream& out) {
  const GridSpec spec = cfg.grid_spec();
  const Family fam = parse_family(cfg.family);
  const Certificate cert = certified_lower_bound(spec, fam, CertifyOptions{cfg.jobs});
  std::vector<VertexId> initial = cfg.have_infected ? cfg.infected : cert.context.u_vertices();
  for (VertexId x : cfg.drop) {
    auto it = std::find(initial.begin(), initial.end(), x);
    if (it == initial.end()) throw InvalidInput("--drop " + std::to_string(x) + " is not in the initial set");
    initial.erase(it);
  }
  for (VertexId v : initial)
    if (v >= spec.num_vertices()) throw InvalidInput("vertex id " + std::to_string(v) + " out of range");
  const AuditReport report = audit_percolating_set(cert, fam, initial);
  Json j{{"spec", to_json(spec)}, {"family", cfg.family}, {"initial", initial}};
  merge(j, to_json(report));
  emit(j, cfg, out);
  return report.bound_holds ? kOk : kNegative;
}

inline int cmd_minperc(const RunConfig& cfg, std::ostream& out) {
  SearchOptions opts = cfg.search_options();
  Json j;
  Hypergraph h;
  std::optional<GridSpec> spec;
  if (!cfg.input.empty()) {
    h = load_hypergraph(cfg.input);
    j["input"] = cfg.input;
  } else {
    spec = cfg.grid_spec();
    h = grid_hypergraph(*spec, parse_family(cfg.family));
    j["spec"] = to_json(*spec);
    j["family"] = cfg.family;
    j["extremalSize"] = extremal_size(*spec);
    if (cfg.symmetry) opts.symmetry_representatives = orbit_representatives(*spec, parse_family(cfg.family));
  }
  j["vertices"] = h.num_vertices();
  j["edges"] = h.num_edges();

  SearchResult res;
  if (spec && !cfg.exhaustive) {
    const Certificate cert = certified_lower_bound(*spec, Family::K, CertifyOptions{cfg.jobs});
    j["mode"] = "certificate-assisted";
    j["lowerBound"] = cert.lower_bound;
    res = certificate_assisted_search(h, cert.lower_bound, cert.context.u_vertices(), cfg.confirm, opts);
  } else {
    j["mode"] = "exhaustive";
    res = min_percolating_exact(h, opts);
  }
  merge(j, to_json(res));
  if (spec) j["witnessCoords"] = coords_json(res.witness, *spec);
  if (cfg.greedy_trials > 0) {
    const auto greedy = greedy_upper_bound(h, cfg.greedy_trials, cfg.seed);
    j["greedyUpperBound"] = greedy.size();
    j["greedyWitness"] = greedy;
  }
  emit(j, cfg, out);
  return kOk;
}

inline int cmd_rneighbour(const RunConfig& cfg, std::ostream& out) {
  Graph g;
  Json j;
  if (cfg.hypercube > 0) {
    g = build_hypercube(cfg.hypercube);
    j["graph"] = "hypercube";
    j["dimension"] = cfg.hypercube;
  } else {
    if (cfg.d < 1 || cfg.n.empty()) throw InvalidInput("rneighbour needs --hypercube D or --d with --n");
    std::vector<int> dims = cfg.n.size() == 1 ? std::vector<int>(static_cast<std::size_t>(cfg.d), cfg.n.front()) : cfg.n;
    if (dims.size() != static_cast<std::size_t>(cfg.d)) throw InvalidInput("--n needs 1 or d values");
    g = build_grid_graph(dims);
    j["graph"] = "grid";
    j["dims"] = dims;
  }
  if (cfg.r < 1) throw InvalidInput("--r must be at least 1");
  j["r"] = cfg.r;
  j["vertices"] = g.num_vertices();
  j["edges"] = g.num_edges();
  std::vector<VertexId> witness;
  if (cfg.exhaustive) {
    const auto res = min_rn_percolating(g, cfg.r, cfg.search_options());
    j["mode"] = "exhaustive";
    merge(j, to_json(*res));
    witness = res->witness;
  } else {
    witness = greedy_rn_upper_bound(g, cfg.r, std::max(1, cfg.greedy_trials), cfg.seed);
    j["mode"] = "greedy";
    j["upperBound"] = witness.size();
    j["witness"] = witness;
  }
  const bool valid = rn_closure(g, witness, cfg.r).size() == g.num_vertices();
  j["witnessValid"] = valid;
  emit(j, cfg, out);
  return valid ? kOk : kNegative;
}

inline int cmd_wsat(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n.size() != 1) throw InvalidInput("wsat needs a single --n");
  const Hypergraph h = weak_saturation_hypergraph(cfg.n.front(), cfg.wsat_k);
  const SearchResult res = min_percolating_exact(h, cfg.search_options());
  Json j{{"n", cfg.n.front()}, {"k", cfg.wsat_k}, {"vertices", h.num_vertices()}, {"edges", h.num_edges()}};
  merge(j, to_json(res));
  emit(j, cfg, out);
  return kOk;
}

struct SweepRow {
  int d, r, n, t;
  Family family;
  std::uint64_t formula;
  std::uint64_t lower_bound;
  std::optional<std::size_t> brute_force;
  std::uint64_t edges;
  std::size_t u_size;
  long long runtime_ms;

  bool agrees() const {
    return formula == lower_bound && formula == u_size && (!brute_force || *brute_force == formula);
  }
};

inline std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
  std::vector<Family> fams;
  std::stringstream ss(cfg.families);
  for (std::string f; std::getline(ss, f, ',');) fams.push_back(parse_family(f));
  std::vector<SweepRow> rows;
  for (int d = 1; d <= cfg.d_max; ++d)
    for (int r = 1; r <= d; ++r)
      for (int n = 2; n <= cfg.n_max; ++n)
        for (int t = 2; t <= n; ++t) {
          const GridSpec spec = GridSpec::homogeneous(n, d, t, r);
          if (spec.num_vertices() > cfg.max_vertices) continue;
          std::optional<Certificate> cert;
          for (Family fam : fams) {
            const auto start = std::chrono::steady_clock::now();
            if (!cert) cert = certified_lower_bound(spec, Family::K, CertifyOptions{cfg.jobs});
            const Hypergraph h = grid_hypergraph(spec, fam);
            std::optional<std::size_t> brute;
            if (spec.num_vertices() <= cfg.brute_max_vertices)
              brute = min_percolating_exact(h, cfg.search_options()).minimum;
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start).count();
            rows.push_back({d, r, n, t, fam, extremal_size(spec), cert->lower_bound, brute, count_edges(spec, fam),
                            cert->context.u_size(), static_cast<long long>(ms)});
          }
        }
  return rows;
}

inline int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto rows = run_sweep(cfg);
  bool ok = true;
  for (const auto& row : rows) ok = ok && row.agrees();
  if (cfg.format == "csv") {
    std::ostringstream buf;
    buf << "d,r,n,t,family,formula,lower_bound,brute_force,edges,u_size,runtime_ms\n";
    for (const auto& row : rows) {
      buf << row.d << ',' << row.r << ',' << row.n << ',' << row.t << ',' << to_string(row.family) << ','
          << row.formula << ',' << row.lower_bound << ',' << (row.brute_force ? std::to_string(*row.brute_force) : "")
          << ',' << row.edges << ',' << row.u_size << ',' << row.runtime_ms << '\n';
    }
    write_text(buf.str(), cfg, out);
  } else {
    Json arr = Json::array();
    for (const auto& row : rows) {
      arr.push_back(Json{{"d", row.d},
                         {"r", row.r},
                         {"n", row.n},
                         {"t", row.t},
                         {"family", std::string(to_string(row.family))},
                         {"formula", row.formula},
                         {"lowerBound", row.lower_bound},
                         {"bruteForce", row.brute_force ? Json(*row.brute_force) : Json(nullptr)},
                         {"edges", row.edges},
                         {"uSize", row.u_size},
                         {"agrees", row.agrees()},
                         {"runtimeMs", row.runtime_ms}});
    }
    emit(Json{{"rows", std::move(arr)}, {"allAgree", ok}}, cfg, out);
  }
  return ok ? kOk : kNegative;
}

inline void add_grid_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--d", cfg.d, "Number of axes d");
  sub->add_option("--r", cfg.r, "Copy dimension r (1 <= r <= d)");
  sub->add_option("--n", cfg.n, "Side length(s) n_k; one value or d comma-separated values")->delimiter(',');
  sub->add_option("--t", cfg.t, "Thickness(es) t_k; one value or d comma-separated values")->delimiter(',');
}

inline void add_family_option(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--family", cfg.family, "Hypergraph family K or P")->check(CLI::IsMember({"K", "P", "k", "p"}));
}

inline void add_search_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--budget", cfg.budget, "Maximum candidate sets tested");
  sub->add_option("--seed", cfg.seed, "Seed for randomized greedy search");
}

}  // namespace detail

/// Runs one CLI invocation; `args` excludes the program name.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  RunConfig cfg;
  CLI::App app{"Bootstrap percolation on grid hypergraphs: extremal sets, exact lower-bound certificates, "
               "and brute-force search oracles",
               "bootperc"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* formula = app.add_subcommand("formula", "Closed-form minimum percolating set size");
  add_grid_options(formula, cfg);

  auto* extremal = app.add_subcommand("extremal", "Construct the extremal set U and test that it percolates");
  add_grid_options(extremal, cfg);
  add_family_option(extremal, cfg);

  auto* edges = app.add_subcommand("edges", "Count, list or export the edges of a grid family");
  add_grid_options(edges, cfg);
  add_family_option(edges, cfg);
  edges->add_flag("--list", cfg.list, "Include every edge as a vertex-id list");
  edges->add_option("--export", cfg.export_path, "Write the hypergraph in text format to this file");

  auto* clos = app.add_subcommand("closure", "Closure of an infected set with infection trace");
  add_grid_options(clos, cfg);
  add_family_option(clos, cfg);
  clos->add_option("--input", cfg.input, "Hypergraph text file (instead of a grid family)");
  clos->add_option("--infected", cfg.infected, "Initially infected vertex ids")->delimiter(',');

  auto* certify = app.add_subcommand("certify", "Build and verify the lower-bound certificate");
  add_grid_options(certify, cfg);
  add_family_option(certify, cfg);
  certify->add_flag("--with-vectors", cfg.with_vectors, "Include every f-vector as p/q strings");

  auto* audit = app.add_subcommand("audit", "Replay a closure against the certificate span");
  add_grid_options(audit, cfg);
  add_family_option(audit, cfg);
  audit->add_option("--infected", cfg.infected, "Initially infected vertex ids (default: U)")->delimiter(',');
  audit->add_option("--drop", cfg.drop, "Remove these ids from the initial set")->delimiter(',');

  auto* minperc = app.add_subcommand("minperc", "Minimum percolating set by search");
  add_grid_options(minperc, cfg);
  add_family_option(minperc, cfg);
  add_search_options(minperc, cfg);
  minperc->add_option("--input", cfg.input, "Hypergraph text file (instead of a grid family)");
  minperc->add_flag("--exhaustive", cfg.exhaustive, "Enumerate from size 0 without the certificate");
  minperc->add_flag("--confirm", cfg.confirm, "In assisted mode, also rule out size bound-1 exhaustively");
  minperc->add_flag("--symmetry", cfg.symmetry, "Prune candidates using grid automorphisms");
  minperc->add_option("--greedy-trials", cfg.greedy_trials, "Also report a randomized greedy upper bound");

  auto* rn = app.add_subcommand("rneighbour", "r-neighbour bootstrap percolation on grids and hypercubes");
  rn->alias("rneighbor");
  rn->add_option("--hypercube", cfg.hypercube, "Use the hypercube Q_D");
  rn->add_option("--d", cfg.d, "Grid dimension");
  rn->add_option("--n", cfg.n, "Grid side length(s)")->delimiter(',');
  rn->add_option("--r", cfg.r, "Infection threshold")->required();
  rn->add_flag("--exhaustive", cfg.exhaustive, "Exact minimum by enumeration (default: greedy upper bound)");
  rn->add_option("--trials", cfg.greedy_trials, "Greedy trials");
  add_search_options(rn, cfg);

  auto* wsat = app.add_subcommand("wsat", "Weak saturation of K_k in K_n as a percolation instance");
  wsat->add_option("--n", cfg.n, "Number of vertices of K_n")->required();
  wsat->add_option("--k", cfg.wsat_k, "Clique size k");
  add_search_options(wsat, cfg);

  auto* sweep = app.add_subcommand("sweep", "Compare formula, certificate and brute force over many specs");
  sweep->add_option("--n-max", cfg.n_max, "Largest side length");
  sweep->add_option("--d-max", cfg.d_max, "Largest dimension");
  sweep->add_option("--max-vertices", cfg.max_vertices, "Skip grids with more vertices");
  sweep->add_option("--brute-max-vertices", cfg.brute_max_vertices, "Brute-force only up to this many vertices");
  sweep->add_option("--families", cfg.families, "Comma-separated families");
  add_search_options(sweep, cfg);

  std::vector<const char*> argv{"bootperc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }
  cfg.have_infected = audit->count("--infected") > 0;

  try {
    if (*formula) return cmd_formula(cfg, out);
    if (*extremal) return cmd_extremal(cfg, out);
    if (*edges) return cmd_edges(cfg, out);
    if (*clos) return cmd_closure(cfg, out);
    if (*certify) return cmd_certify(cfg, out);
    if (*audit) return cmd_audit(cfg, out);
    if (*minperc) return cmd_minperc(cfg, out);
    if (*rn) return cmd_rneighbour(cfg, out);
    if (*wsat) return cmd_wsat(cfg, out);
    if (*sweep) return cmd_sweep(cfg, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const CertificateInvalid& e) {
    err << "error: " << e.what() << '\n';
    return kNegative;
  }
  return kInvalidInput;
}

}  // namespace bootperc
