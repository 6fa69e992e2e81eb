#pragma once

// End-to-end runs: rescale away from the boundary, extend, estimate the
// separation between the target values and the forbidden set, take a
// verified polynomial approximation, then iterate the avoidance step. The
// stage budgets split the requested eps exactly (thirds with the separation
// cap when an interior exists, halves when the set has no interior), and
// the final report is re-measured, never inferred from the inequalities.

#include <optional>

#include "avoidapprox/avoid_countable.hpp"
#include "avoidapprox/compact_set.hpp"
#include "avoidapprox/core.hpp"
#include "avoidapprox/countable_sets.hpp"
#include "avoidapprox/evaluator.hpp"
#include "avoidapprox/mergelyan.hpp"
#include "avoidapprox/poly.hpp"

namespace avoidapprox {

struct StageError : std::runtime_error {
  StageError(std::string stage_tag, const std::string& msg)
      : std::runtime_error("[" + stage_tag + "] " + msg), stage(std::move(stage_tag)) {}
  std::string stage;
};

enum class PipelineMode { theorem1_discs, theorem2_empty_interior };

inline std::string to_string(PipelineMode m) {
  return m == PipelineMode::theorem1_discs ? "theorem1_discs" : "theorem2_empty_interior";
}

struct PipelineOptions {
  int max_fit_degree = 80;
  bool keep_iterates = false;
  double reach_slack = 1.0;     // padding added to sup|g| when truncating A
  double delta_deflate = 0.1;   // cap on the continuity slack, as a fraction
};

struct ApproximationProblem {
  FunctionEvaluator f;
  CompactSetSample K;
  std::vector<DiscSpec> discs;   // required in disc mode
  ForbiddenSet A;
  double eps = 0.0;
  PipelineMode mode = PipelineMode::theorem1_discs;
  PipelineOptions options;
};

struct PipelineReport {
  double g_error = 0.0;                 // measured sup |g - f| (0 when no rescale ran)
  double delta = std::numeric_limits<double>::infinity();  // separation estimate
  double q_error = 0.0;                 // measured sup |q - g|
  int q_degree = 0;
  double q_budget = 0.0;
  AvoidanceReport avoid_report;
  double final_sup_error = 0.0;         // measured sup |f - p| over all samples
  std::vector<double> final_min_margins;  // per value of A, min over all samples
  bool certified = false;
  bool rescale_used = false;
  RescaleParams rescale;
  std::size_t avoided_value_count = 0;  // values kept after reach truncation
  double reach_bound = 0.0;
  std::map<std::string, double> forbidden_truncation;
};

// Minimum over the closure-of-interior samples and all forbidden values of
// |g(z) - a|, deflated for the possible dip of g between samples (measured
// local variation times the mesh, capped at a tenth of the raw minimum, so a
// constant g keeps its exact separation). Errors out when the sampled
// separation is not meaningfully positive: either the interior hypothesis
// fails or the discretization is too coarse.
inline double estimate_delta(const FunctionEvaluator& g, const CompactSetSample& K,
                             const ForbiddenSet& A, double max_deflate = 0.1) {
  if (K.closure_interior_points.empty())
    throw StageError("estimate_delta", "set has no closure-of-interior samples");
  if (A.values.empty()) return std::numeric_limits<double>::infinity();

  double raw = std::numeric_limits<double>::infinity();
  for (Complex z : K.closure_interior_points) {
    const Complex gz = g(z);
    for (Complex a : A.values) raw = std::min(raw, std::abs(gz - a));
  }

  // Local variation of g between consecutive samples (the constructors emit
  // spatially coherent orderings).
  double lip = 0.0;
  const auto& pts = K.closure_interior_points;
  if (pts.size() >= 2) {
    const std::size_t step = std::max<std::size_t>(1, pts.size() / 1024);
    for (std::size_t i = 0; i + 1 < pts.size(); i += step) {
      const double d = std::abs(pts[i] - pts[i + 1]);
      if (d > 1e-300 && d < 8.0 * K.mesh)
        lip = std::max(lip, std::abs(g(pts[i]) - g(pts[i + 1])) / d);
    }
  }
  const double slack = std::min(lip * K.mesh, max_deflate * raw);
  const double deflated = raw - slack;

  const double floor = std::max(lip * K.mesh * 0.1, 1e-12);
  if (!(deflated > floor))
    throw StageError("estimate_delta",
                     "separation not positive at this resolution (hypothesis violated or "
                     "under-resolved): delta=" +
                         std::to_string(deflated));
  return deflated;
}

namespace detail {

inline void validate(const ApproximationProblem& prob) {
  if (!(prob.eps > 0.0)) throw StageError("validate", "eps must be positive");
  if (prob.K.all_points.empty()) throw StageError("validate", "empty sample set");
  if (prob.mode == PipelineMode::theorem1_discs) {
    if (prob.discs.empty()) throw StageError("validate", "disc mode requires disc specs");
    if (prob.K.interior_points.empty())
      throw StageError("validate", "disc mode requires interior samples");
    if (prob.discs.size() >= 2 && !(prob.K.component_separation > 0.0) && !prob.K.tangency)
      throw StageError("validate", "disc mode requires positively separated components");
  } else {
    if (!prob.K.interior_points.empty())
      throw StageError("validate", "empty-interior mode forbids interior samples");
  }
}

}  // namespace detail

inline std::pair<Polynomial, PipelineReport> run(const ApproximationProblem& prob) {
  detail::validate(prob);
  PipelineReport rep;
  const double eps = prob.eps;

  FunctionEvaluator g = prob.f;
  double q_budget;

  if (prob.mode == PipelineMode::theorem1_discs) {
    try {
      auto [g_resc, params] = disc_rescale(prob.f, prob.discs, prob.K, eps / 3.0);
      rep.rescale = std::move(params);
      rep.rescale_used = true;
      g = extend_to_K(g_resc, prob.K);
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError("disc_rescale", e.what());
    }

    double gerr = 0.0;
    for (std::size_t i = 0; i < prob.K.all_points.size(); ++i)
      gerr = std::max(gerr, std::abs(g(prob.K.all_points[i]) - prob.f(prob.K.all_points[i])));
    rep.g_error = gerr;
    if (!(gerr <= eps / 3.0 + 1e-12 * (1.0 + gerr)))
      throw StageError("extend", "extension exceeded the eps/3 budget: " + std::to_string(gerr));
  }

  const double reach = g.sup_abs_on(prob.K.all_points) + eps + prob.options.reach_slack;
  rep.reach_bound = reach;
  const ForbiddenSet A_eff = truncate_to_reach(prob.A, reach);
  rep.avoided_value_count = A_eff.values.size();
  rep.forbidden_truncation = A_eff.truncation_params;

  if (prob.mode == PipelineMode::theorem1_discs) {
    rep.delta = estimate_delta(g, prob.K, A_eff, prob.options.delta_deflate);
    q_budget = std::min(eps / 3.0, rep.delta / 2.0);
  } else {
    q_budget = eps / 2.0;
  }
  rep.q_budget = q_budget;

  Polynomial q;
  try {
    double qerr = 0.0;
    q = approximate_poly(g, prob.K, q_budget, prob.options.max_fit_degree, &qerr);
    rep.q_error = qerr;
    rep.q_degree = q.degree();
  } catch (const FitError& e) {
    throw StageError("mergelyan", e.what());
  }

  try {
    rep.avoid_report = avoid_set(q, A_eff, prob.K, q_budget, prob.options.keep_iterates);
  } catch (const std::exception& e) {
    throw StageError("avoid", e.what());
  }
  const Polynomial& p = rep.avoid_report.p;

  // Post-verification: measure everything the construction promises.
  const auto all = std::span<const Complex>(prob.K.all_points);
  double sup_err = 0.0;
  for (Complex z : all) sup_err = std::max(sup_err, std::abs(prob.f(z) - p(z)));
  rep.final_sup_error = sup_err;
  if (!(sup_err < eps))
    throw StageError("post_verify",
                     "measured sup error " + std::to_string(sup_err) + " >= eps");

  rep.final_min_margins.reserve(prob.A.values.size());
  const double lip_all = derivative_sup_bound(p, all) * prob.K.mesh;
  double radius = 0.0;
  for (Complex z : all) radius = std::max(radius, std::abs(z));
  const double noise = eval_noise_floor(p, radius);
  bool margins_certified = true;
  for (Complex a : prob.A.values) {
    const double m = min_abs_on(p, all, a);
    if (!(m > noise))
      throw StageError("post_verify", "a forbidden value is attained on the samples");
    rep.final_min_margins.push_back(m);
    margins_certified = margins_certified && m > lip_all;
  }

  rep.certified = rep.avoid_report.certified && margins_certified && sup_err < eps;
  return {p, rep};
}

// Theorem-2 style run against the algebraic numbers inside the reachable
// value region, at the given degree/height truncation.
inline std::pair<Polynomial, PipelineReport> corollary_transcendental(
    const FunctionEvaluator& f, const CompactSetSample& K, double eps, int max_degree,
    int max_height, PipelineOptions options = {}) {
  if (!K.interior_points.empty())
    throw StageError("validate", "corollary requires an empty-interior set");

  ApproximationProblem prob;
  prob.f = f;
  prob.K = K;
  prob.eps = eps;
  prob.mode = PipelineMode::theorem2_empty_interior;
  prob.options = options;

  if (max_height >= 1) {
    const double reach = f.sup_abs_on(K.all_points) + eps + options.reach_slack;
    const BoundingBox region{-reach, reach, -reach, reach};
    prob.A = algebraic_numbers(max_degree, max_height, region);
  } else {
    prob.A = explicit_set({});
    prob.A.source = ForbiddenSource::algebraic;
    prob.A.truncation_params["max_degree"] = max_degree;
    prob.A.truncation_params["max_height"] = max_height;
  }
  return run(prob);
}

// Re-measures a finished polynomial against a (usually denser) sample set.
struct VerificationResult {
  double sup_error = 0.0;
  std::vector<double> margins;
  bool sup_ok = false;
  bool margins_ok = false;
  bool ok = false;
};

inline VerificationResult verify_on(const FunctionEvaluator& f, const Polynomial& p,
                                    const CompactSetSample& K, const ForbiddenSet& A, double eps) {
  VerificationResult v;
  for (Complex z : K.all_points) v.sup_error = std::max(v.sup_error, std::abs(f(z) - p(z)));
  v.sup_ok = v.sup_error < eps;
  v.margins_ok = true;
  double radius = 0.0;
  for (Complex z : K.all_points) radius = std::max(radius, std::abs(z));
  const double floor = eval_noise_floor(p, radius);
  for (Complex a : A.values) {
    const double m = min_abs_on(p, std::span<const Complex>(K.all_points), a);
    v.margins.push_back(m);
    v.margins_ok = v.margins_ok && m > floor;
  }
  v.ok = v.sup_ok && v.margins_ok;
  return v;
}

}  // namespace avoidapprox
