#pragma once

// Topological obstruction demo: a smooth arc that loops around one value but
// not another, a polynomial tracking it, and the winding-number witness that
// the image must cross the segment between the two values.

#include <numbers>

#include "avoidapprox/core.hpp"
#include "avoidapprox/linalg.hpp"
#include "avoidapprox/poly.hpp"

namespace avoidapprox {

struct WindingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ObstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurveSamples {
  std::vector<Complex> points;
  std::vector<double> params;  // in [0,1], aligned with points
};

struct ClosedCurveSamples {
  std::vector<Complex> points;  // first ~ last
};

// Signed number of times the sampled closed curve encircles w. Requires the
// sampling to be fine relative to the clearance of w so no argument
// increment can alias.
inline int winding_number(const ClosedCurveSamples& curve, Complex w) {
  const auto& pts = curve.points;
  if (pts.size() < 3) throw WindingError("winding_number: too few samples");

  double max_spacing = 0.0;
  double min_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    min_dist = std::min(min_dist, std::abs(pts[i] - w));
    if (i + 1 < pts.size()) max_spacing = std::max(max_spacing, std::abs(pts[i + 1] - pts[i]));
  }
  max_spacing = std::max(max_spacing, std::abs(pts.front() - pts.back()));
  if (!(min_dist > 3.0 * max_spacing))
    throw WindingError("winding_number: point too close to the curve for this sampling");

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += std::arg((pts[i + 1] - w) / (pts[i] - w));
  total += std::arg((pts.front() - w) / (pts.back() - w));
  return static_cast<int>(std::llround(total / (2.0 * std::numbers::pi)));
}

struct GammaCurve {
  CurveSamples arc;
  Complex self_intersection;  // the doubly visited point
  double t_first = 0.0;       // parameter of the first visit
  double t_second = 0.0;      // parameter of the second visit
  double min_dist_a1 = 0.0;   // clearance of a1 from the sampled arc
};

namespace detail {

// Canonical self-intersecting arc: the trigonometric trinomial
//   gamma(theta) = 1 + e^{i theta} + e^{2 i theta},  theta in [pi/4, 7pi/4].
// gamma(u) = gamma(v) forces (z_u - z_v)(1 + z_u + z_v) = 0 for z = e^{i.},
// so the only double point is gamma = 0, reached at theta = 2pi/3 and
// 4pi/3 with transversal tangents. The inner loop between the two visits
// winds once around 0.5; the reference outside value is 2.2. Two harmonics
// keep polynomial fits converging geometrically.
inline constexpr double gamma_theta_lo = std::numbers::pi / 4.0;
inline constexpr double gamma_theta_hi = 7.0 * std::numbers::pi / 4.0;
inline constexpr double gamma_t_first = 5.0 / 18.0;    // theta = 2pi/3
inline constexpr double gamma_t_second = 13.0 / 18.0;  // theta = 4pi/3
inline const Complex gamma_a1_ref{0.5, 0.0};
inline const Complex gamma_a2_ref{2.2, 0.0};

inline Complex gamma_reference(double t) {
  const double th = gamma_theta_lo + (gamma_theta_hi - gamma_theta_lo) * t;
  return 1.0 + std::exp(Complex{0.0, th}) + std::exp(Complex{0.0, 2.0 * th});
}

inline double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 < 1e-300) return std::abs(p - a);
  const double t = std::clamp(((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2,
                              0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace detail

// The canonical arc mapped by the complex-affine map sending its reference
// values to a1 and a2. Affine maps preserve the loop topology, so the result
// winds once around a1 and not at all around a2.
inline GammaCurve build_gamma(Complex a1, Complex a2, std::size_t samples = 4001) {
  if (std::abs(a1 - a2) < 1e-12) throw ObstructionError("build_gamma: a1 and a2 must differ");
  if (samples < 64) throw ObstructionError("build_gamma: too few samples");

  const Complex alpha = (a2 - a1) / (detail::gamma_a2_ref - detail::gamma_a1_ref);
  const Complex beta = a1 - alpha * detail::gamma_a1_ref;

  GammaCurve g;
  g.arc.points.resize(samples);
  g.arc.params.resize(samples);
  double mind = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    g.arc.params[i] = t;
    g.arc.points[i] = alpha * detail::gamma_reference(t) + beta;
    mind = std::min(mind, std::abs(g.arc.points[i] - a1));
  }
  g.min_dist_a1 = mind;
  g.self_intersection = beta;  // the double point of the reference arc is 0
  g.t_first = detail::gamma_t_first;
  g.t_second = detail::gamma_t_second;
  return g;
}

struct ObstructionReport {
  bool obstructed = false;
  int winding_a1 = 0;
  int winding_a2 = 0;
  int winding_difference = 0;
  double min_distance_to_segment = 0.0;
  double curve_spacing = 0.0;  // max adjacent spacing of the image samples
  double fit_sup_error = 0.0;
  int fit_degree_used = 0;
  double eps = 0.0;
};

// Closes the image's near-loop between the two passes by the
// self-intersection point and measures the winding difference around a1 vs
// a2 plus the clearance of the image from the segment [a1, a2].
inline ObstructionReport obstruction_from_curve(const CurveSamples& image,
                                                const GammaCurve& gamma, Complex a1, Complex a2,
                                                double eps) {
  const auto& pts = image.points;
  const auto& ts = image.params;
  if (pts.size() != ts.size() || pts.size() < 64)
    throw ObstructionError("obstruction_from_curve: bad image sampling");

  // Parameter windows that pass within 2*eps of the crossing point, anchored
  // at the two construction-time visits.
  const auto window_center = [&](double t_anchor) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (std::abs(ts[i] - t_anchor) > 0.2) continue;
      const double d = std::abs(pts[i] - gamma.self_intersection);
      if (d < bd) {
        bd = d;
        best = i;
      }
    }
    if (!(bd <= 2.0 * eps + 1e-9))
      throw ObstructionError(
          "obstruction_from_curve: image does not re-enter the crossing window");
    return best;
  };
  const std::size_t ia = window_center(gamma.t_first);
  const std::size_t ib = window_center(gamma.t_second);
  if (ia >= ib) throw ObstructionError("obstruction_from_curve: windows out of order");

  // The near-loop, closed by the short bridge across the crossing window.
  ClosedCurveSamples loop;
  loop.points.assign(pts.begin() + static_cast<std::ptrdiff_t>(ia),
                     pts.begin() + static_cast<std::ptrdiff_t>(ib) + 1);
  const Complex loop_end = loop.points.back();
  const Complex bridge = loop.points.front() - loop_end;
  const int bridge_steps = 8;
  for (int k = 1; k < bridge_steps; ++k)
    loop.points.push_back(loop_end + bridge * (static_cast<double>(k) / bridge_steps));

  ObstructionReport rep;
  rep.eps = eps;
  rep.winding_a1 = winding_number(loop, a1);
  rep.winding_a2 = winding_number(loop, a2);
  rep.winding_difference = rep.winding_a1 - rep.winding_a2;
  rep.obstructed = rep.winding_difference != 0;

  double spacing = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    spacing = std::max(spacing, std::abs(pts[i + 1] - pts[i]));
  rep.curve_spacing = spacing;

  double mind = std::numeric_limits<double>::infinity();
  for (Complex p : pts) mind = std::min(mind, detail::point_segment_distance(p, a1, a2));
  rep.min_distance_to_segment = mind;
  return rep;
}

// Full demo: build the arc, fit a polynomial to it within eps (degree sweep
// up to fit_degree, verified on the samples), then measure the obstruction.
inline ObstructionReport demo_obstruction(Complex a1, Complex a2, double eps, int fit_degree,
                                          std::size_t samples = 4001,
                                          CurveSamples* fitted_out = nullptr,
                                          GammaCurve* gamma_out = nullptr) {
  const GammaCurve gamma = build_gamma(a1, a2, samples);
  if (!(eps > 0.0) || !(eps < gamma.min_dist_a1 / 4.0))
    throw ObstructionError("demo_obstruction: eps must lie in (0, dist(a1,curve)/4)");

  // The arc in the plane is the segment [0,1]; fit a polynomial in z to the
  // curve values at z = t, in the centered variable (z - 1/2)/(1/2).
  const std::size_t n = gamma.arc.points.size();
  IncrementalQR qr(n);
  {
    std::vector<Complex> rhs(gamma.arc.points.begin(), gamma.arc.points.end());
    qr.set_rhs(std::move(rhs));
  }
  std::vector<Complex> basis(n, Complex{1.0});
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = Complex{2.0 * gamma.arc.params[i] - 1.0, 0.0};

  Polynomial fit;
  double fit_err = std::numeric_limits<double>::infinity();
  int used_degree = -1;
  for (int deg = 0; deg <= fit_degree; ++deg) {
    std::vector<Complex> col(basis.begin(), basis.end());
    qr.add_column(std::move(col));
    for (std::size_t i = 0; i < n; ++i) basis[i] *= x[i];
    const double rms = qr.residual_norm() / std::sqrt(static_cast<double>(n));
    if (rms > eps && deg < fit_degree) continue;
    const auto beta = qr.solve();
    Polynomial q = detail::unscale_fit(beta, Complex{0.5, 0.0}, 0.5);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      err = std::max(err, std::abs(q(Complex{gamma.arc.params[i], 0.0}) - gamma.arc.points[i]));
    if (err < fit_err) {
      fit_err = err;
      fit = q;
      used_degree = deg;
    }
    if (err < eps) break;
  }
  if (!(fit_err < eps))
    throw ObstructionError("demo_obstruction: fit cannot reach eps at degree " +
                           std::to_string(fit_degree) + " (best " + std::to_string(fit_err) +
                           "); try a higher degree");

  CurveSamples image;
  image.params = gamma.arc.params;
  image.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) image.points[i] = fit(Complex{gamma.arc.params[i], 0.0});
  if (fitted_out) *fitted_out = image;
  if (gamma_out) *gamma_out = gamma;

  ObstructionReport rep = obstruction_from_curve(image, gamma, a1, a2, eps);
  rep.fit_sup_error = fit_err;
  rep.fit_degree_used = used_degree;
  return rep;
}

}  // namespace avoidapprox
