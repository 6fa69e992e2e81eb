#pragma once

// The polynomial-approximation stage: per-disc rescaling that pulls values
// away from boundary behaviour, sample-level continuous extension to the
// whole set, and verified polynomial approximation (exact passthrough,
// series truncation with a remainder bound, or least-squares fit). Every
// returned polynomial is re-verified against the target on the samples; the
// fitting procedure is never trusted on its own.

#include "avoidapprox/compact_set.hpp"
#include "avoidapprox/core.hpp"
#include "avoidapprox/evaluator.hpp"
#include "avoidapprox/linalg.hpp"
#include "avoidapprox/poly.hpp"

namespace avoidapprox {

struct RescaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FitError : std::runtime_error {
  FitError(const std::string& msg, int degree, double error)
      : std::runtime_error(msg), best_degree(degree), best_error(error) {}
  int best_degree;
  double best_error;
};

struct RescaleParams {
  std::vector<double> xi_per_component;  // each in (0,1)
};

// g(z) = f(c_j + (1-xi_j)(z-c_j)) per disc, with xi_j halved from 1/2 until
// the measured shift sup |g-f| on that component's samples is within target.
inline std::pair<FunctionEvaluator, RescaleParams> disc_rescale(const FunctionEvaluator& f,
                                                                const std::vector<DiscSpec>& discs,
                                                                const CompactSetSample& K,
                                                                double target,
                                                                double xi_floor = 1e-6) {
  if (discs.empty()) throw RescaleError("disc_rescale: no discs");
  if (!(target > 0.0)) throw RescaleError("disc_rescale: target must be positive");

  RescaleParams params;
  params.xi_per_component.reserve(discs.size());
  for (std::size_t j = 0; j < discs.size(); ++j) {
    const auto& d = discs[j];
    std::vector<Complex> pts;
    for (std::size_t i = 0; i < K.closure_interior_points.size(); ++i) {
      const Complex z = K.closure_interior_points[i];
      if (std::abs(z - d.center) <= d.radius * (1.0 + 1e-12) + 1e-12) pts.push_back(z);
    }
    if (pts.empty()) throw RescaleError("disc_rescale: disc has no closure samples");

    double xi = 0.5;
    bool ok = false;
    while (xi >= xi_floor) {
      double shift = 0.0;
      for (Complex z : pts)
        shift = std::max(shift, std::abs(f(d.center + (1.0 - xi) * (z - d.center)) - f(z)));
      if (shift <= target) {
        ok = true;
        break;
      }
      xi *= 0.5;
    }
    if (!ok)
      throw RescaleError("disc_rescale: no xi above the floor meets the target on disc " +
                         std::to_string(j));
    params.xi_per_component.push_back(xi);
  }
  return {FunctionEvaluator::disc_rescaled(f, discs, params.xi_per_component), params};
}

// Extends g from the closure-of-interior samples to every sample of K as a
// value table: points outside the closed interior take the value at the
// nearest closure sample (a continuous extension at the sampling scale).
inline FunctionEvaluator extend_to_K(const FunctionEvaluator& g, const CompactSetSample& K) {
  if (K.closure_interior_points.empty())
    throw EvaluationError("extend_to_K: set has no closure-of-interior samples");

  std::vector<Complex> closure_vals(K.closure_interior_points.size());
  for (std::size_t i = 0; i < closure_vals.size(); ++i)
    closure_vals[i] = g(K.closure_interior_points[i]);

  NearestIndex closure_index(K.closure_interior_points);
  std::vector<Complex> vals(K.all_points.size());
  for (std::size_t i = 0; i < K.all_points.size(); ++i) {
    if (K.is_closure_interior[i]) {
      vals[i] = g(K.all_points[i]);
    } else {
      vals[i] = closure_vals[closure_index.nearest(K.all_points[i])];
    }
  }
  return FunctionEvaluator::from_samples(K.all_points, std::move(vals));
}

// Returns a polynomial q with verified sup |q - g| < tol over all samples of
// K. Polynomials pass through exactly; series are truncated where the
// coefficient-tail bound drops below tol/2; anything else is fit by
// boundary-weighted least squares with a degree sweep, accepting the first
// degree that verifies.
inline Polynomial approximate_poly(const FunctionEvaluator& g, const CompactSetSample& K,
                                   double tol_target, int max_degree,
                                   double* measured_error = nullptr) {
  if (!(tol_target > 0.0)) throw std::invalid_argument("approximate_poly: tol must be positive");
  if (K.all_points.empty()) throw std::invalid_argument("approximate_poly: empty sample set");

  const auto verify = [&](const Polynomial& q) {
    double e = 0.0;
    for (Complex z : K.all_points) e = std::max(e, std::abs(q(z) - g(z)));
    return e;
  };

  if (g.kind() == FunctionEvaluator::Kind::polynomial) {
    if (measured_error) *measured_error = 0.0;
    return g.poly();
  }

  if (g.kind() == FunctionEvaluator::Kind::taylor_series) {
    double reach = 0.0;
    for (Complex z : K.all_points) reach = std::max(reach, std::abs(z - g.series_center()));
    if (reach <= g.series_radius()) {
      const std::size_t top =
          std::min<std::size_t>(g.series().size() - 1, static_cast<std::size_t>(max_degree));
      for (std::size_t n = 0; n <= top; ++n) {
        if (g.taylor_tail(reach, n) > 0.5 * tol_target) continue;
        std::vector<Complex> trunc(g.series().begin(),
                                   g.series().begin() + static_cast<std::ptrdiff_t>(n) + 1);
        // shift the series variable w = z - center back to z
        std::vector<Complex> beta(trunc.rbegin(), trunc.rend());
        std::vector<Complex> acc{beta.front()};
        for (std::size_t k = 1; k < beta.size(); ++k) {
          std::vector<Complex> next(acc.size() + 1, Complex{});
          for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i + 1] += acc[i];
            next[i] -= g.series_center() * acc[i];
          }
          next[0] += beta[k];
          acc = std::move(next);
        }
        Polynomial q(std::move(acc));
        const double err = verify(q);
        if (err < tol_target) {
          if (measured_error) *measured_error = err;
          return q;
        }
      }
    }
    // fall through to the fit when truncation cannot meet the budget
  }

  // Least-squares path. Fit on a deterministic subset, verify on everything.
  const std::size_t n_all = K.all_points.size();
  const std::size_t fit_cap = 6000;
  const std::size_t stride = std::max<std::size_t>(1, (n_all + fit_cap - 1) / fit_cap);
  std::vector<Complex> pts;
  std::vector<double> weights;
  for (std::size_t i = 0; i < n_all; ++i) {
    if (i % stride != 0) continue;
    pts.push_back(K.all_points[i]);
    weights.push_back(K.is_boundary[i] ? 2.0 : 1.0);
  }

  const Complex mu = centroid_of(pts);
  double r = 0.0;
  for (Complex z : pts) r = std::max(r, std::abs(z - mu));
  r = std::max(r, 1e-12);

  std::vector<Complex> gvals(pts.size());
  double grms = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    gvals[i] = g(pts[i]);
    grms += std::norm(gvals[i]);
  }
  grms = std::sqrt(grms / static_cast<double>(pts.size()));
  const double ridge = 1e-10 * (grms + 1.0);

  const std::size_t mrows = pts.size() + static_cast<std::size_t>(max_degree) + 1;
  IncrementalQR qr(mrows);
  {
    std::vector<Complex> b(mrows, Complex{});
    double wsum = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      b[i] = std::sqrt(weights[i]) * gvals[i];
      wsum += weights[i];
    }
    qr.set_rhs(std::move(b));
  }

  std::vector<Complex> basis(pts.size(), Complex{1.0});
  double total_weight = 0.0;
  for (double w : weights) total_weight += w;

  double best_err = std::numeric_limits<double>::infinity();
  int best_deg = -1;

  for (int deg = 0; deg <= max_degree; ++deg) {
    std::vector<Complex> col(mrows, Complex{});
    for (std::size_t i = 0; i < pts.size(); ++i) col[i] = std::sqrt(weights[i]) * basis[i];
    // mild high-degree damping
    col[pts.size() + static_cast<std::size_t>(deg)] =
        ridge * static_cast<double>(deg) * static_cast<double>(deg);
    qr.add_column(std::move(col));
    for (std::size_t i = 0; i < pts.size(); ++i) basis[i] *= (pts[i] - mu) / r;

    // sup error >= weighted rms, so degrees that cannot pass are skipped
    // without the expensive verification sweep
    const double rms = qr.residual_norm() / std::sqrt(total_weight);
    if (rms > tol_target && deg < max_degree) continue;
    if (rms > 4.0 * tol_target) continue;

    const auto beta = qr.solve();
    Polynomial q = detail::unscale_fit(beta, mu, r);
    const double err = verify(q);
    if (err < best_err) {
      best_err = err;
      best_deg = deg;
    }
    if (err < tol_target) {
      if (measured_error) *measured_error = err;
      return q;
    }
  }

  throw FitError("approximate_poly: no degree <= " + std::to_string(max_degree) +
                     " meets the budget (best " + std::to_string(best_err) + " at degree " +
                     std::to_string(best_deg) + ")",
                 best_deg, best_err);
}

}  // namespace avoidapprox
