#pragma once

// Iterated avoidance over a finite forbidden-value list: each value gets one
// perturbation step with a geometrically shrinking budget, so the iterates
// form a Cauchy sequence and every earlier margin survives to the final
// polynomial with a quantified reserve.

#include "avoidapprox/avoid_one.hpp"
#include "avoidapprox/compact_set.hpp"
#include "avoidapprox/core.hpp"
#include "avoidapprox/countable_sets.hpp"
#include "avoidapprox/poly.hpp"

namespace avoidapprox {

struct AvoidanceReport {
  Polynomial p;                          // final polynomial
  double eps0 = 0.0;                     // initial budget (half the requested eps)
  std::vector<double> deltas;            // delta_j: boundary margin right after step j
  std::vector<double> eps_schedule;      // eps_j = min(delta_j, eps_{j-1}/2) / 2
  std::vector<double> final_margins;     // min over boundary samples of |p - a_j|
  std::vector<Polynomial> iterates_kept; // p_0..p_N when requested
  double total_sup_change = 0.0;         // sup over all samples of |p - q|
  bool certified = false;
  double leading_magnitude = 0.0;

  // [eps_0, eps_1, ..., eps_N], aligned with the iterate list.
  std::vector<double> full_schedule() const {
    std::vector<double> s{eps0};
    s.insert(s.end(), eps_schedule.begin(), eps_schedule.end());
    return s;
  }
};

inline AvoidanceReport avoid_set(const Polynomial& q, const ForbiddenSet& A,
                                 const CompactSetSample& K, double eps,
                                 bool keep_iterates = false, double delta_floor = 1e-12) {
  if (!(eps > 0.0)) throw AvoidanceError("avoid_set: eps must be positive");

  // The recursion shrinks the budget by at least a factor 4 per value, so
  // long enumerations would underflow doubles; the floor keeps the budget
  // positive. Steps that merely skip consume none of it, and every margin
  // claim below is measured, not inferred from the schedule.
  constexpr double eps_floor = 1e-280;

  AvoidanceReport rep;
  rep.eps0 = eps / 2.0;
  if (keep_iterates) rep.iterates_kept.push_back(q);

  Polynomial current = q;
  double eps_prev = rep.eps0;
  for (std::size_t j = 0; j < A.values.size(); ++j) {
    SingleAvoidanceResult step;
    try {
      step = avoid_value(current, A.values[j], K, eps_prev / 2.0);
    } catch (const std::exception& e) {
      throw AvoidanceError("avoid_set: step " + std::to_string(j + 1) + " failed: " + e.what());
    }
    const double delta_j = step.margin;
    if (delta_j <= delta_floor * (1.0 + std::abs(A.values[j])))
      throw AvoidanceError("avoid_set: step " + std::to_string(j + 1) +
                           " margin degenerate at this discretization");
    current = std::move(step.q);
    rep.deltas.push_back(delta_j);
    const double eps_j = std::max(0.5 * std::min(delta_j, eps_prev / 2.0), eps_floor);
    rep.eps_schedule.push_back(eps_j);
    eps_prev = eps_j;
    if (keep_iterates) rep.iterates_kept.push_back(current);
  }

  rep.p = std::move(current);
  rep.leading_magnitude = std::abs(rep.p.leading());
  rep.total_sup_change =
      A.values.empty() ? 0.0 : sup_on(rep.p - q, std::span<const Complex>(K.all_points));

  const auto boundary = std::span<const Complex>(K.boundary_points);
  rep.final_margins.reserve(A.values.size());
  bool cert = true;
  const double lip =
      K.boundary_points.empty() ? 0.0 : derivative_sup_bound(rep.p, boundary) * K.boundary_mesh;
  for (Complex a : A.values) {
    const double m = min_abs_on(rep.p, boundary, a);
    rep.final_margins.push_back(m);
    cert = cert && m > lip;
  }
  rep.certified = cert;
  return rep;
}

// True iff for every pair k < l the measured sup over the samples of
// |p_l - p_k| stays strictly below the schedule entry eps_k.
inline bool check_cauchy(std::span<const Polynomial> iterates, std::span<const double> schedule,
                         const CompactSetSample& K) {
  if (iterates.size() != schedule.size())
    throw std::invalid_argument("check_cauchy: iterates and schedule must align");
  const auto all = std::span<const Complex>(K.all_points);
  for (std::size_t k = 0; k < iterates.size(); ++k)
    for (std::size_t l = k + 1; l < iterates.size(); ++l)
      if (sup_on(iterates[l] - iterates[k], all) >= schedule[k]) return false;
  return true;
}

}  // namespace avoidapprox
