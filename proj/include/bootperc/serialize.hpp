#pragma once

// JSON views of library results. Key order is fixed (ordered_json) so equal
// inputs always produce identical bytes.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bootperc/certificate.hpp"
#include "bootperc/closure.hpp"
#include "bootperc/exact_algebra.hpp"
#include "bootperc/grid.hpp"
#include "bootperc/search.hpp"

namespace bootperc {

using Json = nlohmann::ordered_json;

inline Json to_json(const GridSpec& spec) {
  return Json{{"dims", spec.dims()}, {"thick", spec.thick()}, {"r", spec.r()}};
}

inline GridSpec spec_from_json(const Json& j) {
  try {
    return GridSpec(j.at("dims").get<std::vector<int>>(), j.at("thick").get<std::vector<int>>(), j.at("r").get<int>());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad spec object: ") + e.what());
  }
}

/// Integers that fit in int64 become JSON numbers, everything else "p/q".
inline Json to_json(const Rational& x) {
  const Integer& den = boost::multiprecision::denominator(x);
  const Integer& num = boost::multiprecision::numerator(x);
  if (den == 1 && num >= std::numeric_limits<std::int64_t>::min() && num <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(num);
  return to_fraction_string(x);
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw InvalidInput("expected an integer or a \"p/q\" string");
  const auto s = j.get<std::string>();
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    const Integer den(s.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in '" + s + "'");
    return Rational(Integer(s.substr(0, slash)), den);
  } catch (const std::runtime_error&) {
    throw InvalidInput("malformed rational '" + s + "'");
  }
}

inline Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& x : m.row(i)) row.push_back(to_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline RationalMatrix matrix_from_json(const Json& j) {
  std::vector<RationalVector> rows;
  for (const auto& row : j) {
    RationalVector r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    rows.push_back(std::move(r));
  }
  return RationalMatrix::from_rows(rows);
}

/// { spec, family, axisMatrices, lowerBound, verifiedSpan,
///   verifiedDependencies, uSize [, fVectors] }
inline Json to_json(const Certificate& cert, bool include_vectors = false) {
  const auto& ctx = cert.context;
  Json mats = Json::array();
  for (const auto& m : ctx.axis_matrices()) mats.push_back(to_json(m));
  Json j{{"spec", to_json(ctx.spec())},
         {"family", std::string(to_string(ctx.family()))},
         {"axisMatrices", std::move(mats)},
         {"lowerBound", cert.lower_bound},
         {"verifiedSpan", cert.verified_span},
         {"verifiedDependencies", cert.verified_dependencies},
         {"uSize", ctx.u_size()}};
  if (include_vectors) {
    Json fv = Json::array();
    for (const auto& v : cert.f_vectors) {
      Json row = Json::array();
      for (const auto& x : v) row.push_back(to_fraction_string(x));
      fv.push_back(std::move(row));
    }
    j["fVectors"] = std::move(fv);
  }
  return j;
}

/// Rebuilds the context a certificate was made from; re-running
/// build_certificate on it reproduces the certificate.
inline CertificateContext context_from_json(const Json& j) {
  try {
    std::vector<RationalMatrix> mats;
    for (const auto& m : j.at("axisMatrices")) mats.push_back(matrix_from_json(m));
    return CertificateContext(spec_from_json(j.at("spec")), parse_family(j.at("family").get<std::string>()),
                              std::move(mats));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad certificate: ") + e.what());
  }
}

inline Json coords_json(const std::vector<VertexId>& ids, const GridSpec& spec) {
  Json out = Json::array();
  for (VertexId id : ids) out.push_back(decode(id, spec).coords);
  return out;
}

inline Json to_json(const ClosureResult& c, const Hypergraph& h) {
  Json trace = Json::array();
  for (const auto& s : c.trace) trace.push_back(Json::array({s.vertex, s.witness_edge}));
  return Json{{"final", c.final}, {"trace", std::move(trace)}, {"percolates", c.percolated(h)}};
}

inline Json to_json(const AuditReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back(Json{{"vertex", s.vertex}, {"witnessEdge", s.witness_edge}, {"inSpan", s.in_span}});
  return Json{{"percolated", r.percolated},   {"initialSize", r.initial_size},
              {"uSize", r.u_size},            {"seedRank", r.seed_rank},
              {"allStepsInSpan", r.all_steps_in_span}, {"boundHolds", r.bound_holds},
              {"steps", std::move(steps)}};
}

inline Json to_json(const SearchResult& s) {
  return Json{{"minimum", s.minimum}, {"witness", s.witness}, {"candidates", s.candidates}, {"exhaustive", s.exhaustive}};
}

}  // namespace bootperc
