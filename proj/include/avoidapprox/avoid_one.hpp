#pragma once

// Single-value avoidance: given p, a value a and a sampled compact set,
// produce q of the same degree with sup |p-q| < eps on the samples and
// |q - a| > 0 on the boundary samples. Works by factoring p - a, nudging
// the roots that sit near the boundary off it, and rebuilding.

#include <utility>

#include "avoidapprox/compact_set.hpp"
#include "avoidapprox/core.hpp"
#include "avoidapprox/poly.hpp"

namespace avoidapprox {

struct AvoidanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingleAvoidanceResult {
  Polynomial q;
  double margin = 0.0;       // min over boundary samples of |q - a|
  bool certified = false;    // margin > derivative bound x boundary mesh
  double sup_change = 0.0;   // sup over all samples of |p - q|
  std::vector<std::pair<Complex, Complex>> perturbed_roots;  // (original, moved)
  double eta_used = 0.0;
  bool skipped = false;      // p already avoided a; returned unchanged
};

namespace detail {

// Direction for pushing a root off the boundary: away from the nearest
// boundary sample, picking the side that gains more clearance; ties break
// outward from the set centroid.
inline Complex perturb_direction(Complex root, const CompactSetSample& K, double eta) {
  Complex nearest{};
  double best = std::numeric_limits<double>::infinity();
  for (Complex b : K.boundary_points) {
    const double d = std::abs(root - b);
    if (d < best) {
      best = d;
      nearest = b;
    }
  }
  const Complex c = K.centroid();
  Complex u = root - nearest;
  if (std::abs(u) < 1e-300) u = root - c;
  if (std::abs(u) < 1e-300) u = Complex{1.0, 0.0};
  u /= std::abs(u);

  const double d_plus = min_distance_to(K, root + eta * u);
  const double d_minus = min_distance_to(K, root - eta * u);
  if (std::abs(d_plus - d_minus) <= 1e-12 * std::max({d_plus, d_minus, 1e-300})) {
    const double o_plus = std::abs(root + eta * u - c);
    const double o_minus = std::abs(root - eta * u - c);
    return o_plus >= o_minus ? u : -u;
  }
  return d_plus > d_minus ? u : -u;
}

// First-order sup sensitivity of the product to moving the flagged roots:
// sum over flagged k of sup_z |c0| prod_{j != k} |z - z_j|.
inline double move_sensitivity(const RootFactorization& fact,
                               const std::vector<std::size_t>& flagged,
                               std::span<const Complex> samples) {
  double total = 0.0;
  for (std::size_t k : flagged) {
    double sup = 0.0;
    for (Complex z : samples) {
      double prod = std::abs(fact.leading);
      for (std::size_t j = 0; j < fact.roots.size(); ++j) {
        if (j == k) continue;
        prod *= std::abs(z - fact.roots[j]);
      }
      sup = std::max(sup, prod);
    }
    total += sup;
  }
  return total;
}

}  // namespace detail

inline SingleAvoidanceResult avoid_value(const Polynomial& p, Complex a,
                                         const CompactSetSample& K, double eps) {
  if (!(eps > 0.0)) throw AvoidanceError("avoid_value: eps must be positive");
  if (K.boundary_points.empty()) throw AvoidanceError("avoid_value: set has no boundary samples");

  const double activation = 2.0 * K.boundary_mesh;
  const auto boundary = std::span<const Complex>(K.boundary_points);
  const auto all = std::span<const Complex>(K.all_points);

  const auto certify = [&](const Polynomial& q, double margin) {
    return margin > derivative_sup_bound(q, boundary) * K.boundary_mesh;
  };

  // Constant polynomials have no roots to move; a constant shift keeps the
  // degree at zero.
  if (p.degree() == 0) {
    const double dist = std::abs(p.coeffs()[0] - a);
    if (dist > 0.0) {
      SingleAvoidanceResult r;
      r.q = p;
      r.margin = dist;
      r.certified = true;  // derivative is identically zero
      r.skipped = true;
      return r;
    }
    SingleAvoidanceResult r;
    r.q = p.shifted(Complex{eps / 2.0, 0.0});
    r.margin = eps / 2.0;
    r.certified = true;
    r.sup_change = eps / 2.0;
    return r;
  }

  // Value-space skip: p clears a on the boundary by more than the
  // activation threshold already.
  const double margin_p = min_abs_on(p, boundary, a);
  if (margin_p > activation) {
    SingleAvoidanceResult r;
    r.q = p;
    r.margin = margin_p;
    r.certified = certify(p, margin_p);
    r.skipped = true;
    return r;
  }

  const Polynomial g = p.shifted(-a);
  const auto fact = roots(g);

  std::vector<std::size_t> flagged;
  for (std::size_t k = 0; k < fact.roots.size(); ++k)
    if (min_distance_to(K, fact.roots[k]) < activation) flagged.push_back(k);

  // Root-space skip: every root of p - a is certifiably off the boundary.
  if (flagged.empty()) {
    SingleAvoidanceResult r;
    r.q = p;
    r.margin = margin_p;
    r.certified = certify(p, margin_p);
    r.skipped = true;
    return r;
  }

  // Initial step: first-order estimate keeps the expected sup change near
  // eps/4; the crude diameter bound stands in if the estimate degenerates.
  const double sens = detail::move_sensitivity(fact, flagged, all);
  double eta;
  if (std::isfinite(sens) && sens > 0.0) {
    eta = eps / (4.0 * sens);
  } else {
    const double diam = std::max(K.diameter_bound(), 1e-6);
    eta = eps / (4.0 * static_cast<double>(p.degree()) *
                 std::pow(diam, static_cast<double>(p.degree() - 1)));
  }
  eta = std::min(eta, 0.25 * std::max(K.diameter_bound(), 1.0));

  for (int attempt = 0; attempt < 80; ++attempt) {
    std::vector<Complex> moved = fact.roots;
    std::vector<std::pair<Complex, Complex>> pairs;
    for (std::size_t k : flagged) {
      const Complex dir = detail::perturb_direction(fact.roots[k], K, eta);
      moved[k] = fact.roots[k] + eta * dir;
      pairs.emplace_back(fact.roots[k], moved[k]);
    }
    Polynomial q = from_roots(fact.leading, moved).shifted(a);
    const double sup_change = sup_on(p - q, all);
    if (sup_change < eps) {
      const double margin = min_abs_on(q, boundary, a);
      if (margin > 0.0) {
        SingleAvoidanceResult r;
        r.q = std::move(q);
        r.margin = margin;
        r.certified = certify(r.q, margin);
        r.sup_change = sup_change;
        r.perturbed_roots = std::move(pairs);
        r.eta_used = eta;
        return r;
      }
    }
    eta *= 0.5;
  }
  throw AvoidanceError("avoid_value: could not meet the sup budget at any step size");
}

}  // namespace avoidapprox
