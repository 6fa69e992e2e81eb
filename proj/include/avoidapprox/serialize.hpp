#pragma once

// JSON and CSV views of the library types. Polynomials travel as arrays of
// [re, im] coefficient pairs in ascending degree order.

#include <fstream>

#include <json.hpp>

#include "avoidapprox/avoid_countable.hpp"
#include "avoidapprox/compact_set.hpp"
#include "avoidapprox/core.hpp"
#include "avoidapprox/countable_sets.hpp"
#include "avoidapprox/pipeline.hpp"
#include "avoidapprox/poly.hpp"
#include "avoidapprox/proposition.hpp"

namespace avoidapprox {

using json = nlohmann::json;

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Polynomial& p) {
  json arr = json::array();
  for (Complex c : p.coeffs()) arr.push_back(complex_to_json(c));
  return arr;
}

inline Polynomial polynomial_from_json(const json& j) {
  std::vector<Complex> cs;
  for (const auto& e : j) cs.push_back(complex_from_json(e));
  return Polynomial(std::move(cs));
}

inline json to_json(const ForbiddenSet& A) {
  json j;
  j["source"] = to_string(A.source);
  json vals = json::array();
  for (Complex v : A.values) vals.push_back(complex_to_json(v));
  j["values"] = std::move(vals);
  j["truncation_params"] = A.truncation_params;
  if (A.claimed_cover_radius) j["claimed_cover_radius"] = *A.claimed_cover_radius;
  return j;
}

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const AvoidanceReport& r) {
  json j;
  j["polynomial"] = to_json(r.p);
  j["eps0"] = r.eps0;
  j["deltas"] = r.deltas;
  j["eps_schedule"] = r.eps_schedule;
  j["final_margins"] = r.final_margins;
  j["total_sup_change"] = r.total_sup_change;
  j["certified"] = r.certified;
  j["leading_magnitude"] = r.leading_magnitude;
  j["iterates_kept"] = r.iterates_kept.size();
  return j;
}

inline json to_json(const PipelineReport& r) {
  json j;
  j["g_error"] = r.g_error;
  j["delta"] = finite_or_null(r.delta);
  j["q_error"] = r.q_error;
  j["q_degree"] = r.q_degree;
  j["q_budget"] = r.q_budget;
  j["avoid"] = to_json(r.avoid_report);
  j["final_sup_error"] = r.final_sup_error;
  j["final_min_margins"] = r.final_min_margins;
  j["certified"] = r.certified;
  j["rescale_used"] = r.rescale_used;
  j["rescale_xi"] = r.rescale.xi_per_component;
  j["avoided_value_count"] = r.avoided_value_count;
  j["reach_bound"] = r.reach_bound;
  j["forbidden_truncation"] = r.forbidden_truncation;
  return j;
}

inline json to_json(const ObstructionReport& r) {
  json j;
  j["obstructed"] = r.obstructed;
  j["winding_a1"] = r.winding_a1;
  j["winding_a2"] = r.winding_a2;
  j["winding_difference"] = r.winding_difference;
  j["min_distance_to_segment"] = r.min_distance_to_segment;
  j["curve_spacing"] = r.curve_spacing;
  j["fit_sup_error"] = r.fit_sup_error;
  j["fit_degree_used"] = r.fit_degree_used;
  j["eps"] = r.eps;
  return j;
}

// CSV rows: re, im, tag (boundary / interior).
inline void write_samples_csv(std::ostream& os, const CompactSetSample& K) {
  os << "re,im,tag\n";
  for (std::size_t i = 0; i < K.all_points.size(); ++i)
    os << K.all_points[i].real() << ',' << K.all_points[i].imag() << ','
       << (K.is_boundary[i] ? "boundary" : "interior") << '\n';
}

inline void write_curve_csv(std::ostream& os, const CurveSamples& c) {
  os << "t,re,im\n";
  for (std::size_t i = 0; i < c.points.size(); ++i)
    os << c.params[i] << ',' << c.points[i].real() << ',' << c.points[i].imag() << '\n';
}

}  // namespace avoidapprox
