#pragma once

// Certified sampled representations of the compact sets the pipeline runs
// on: disc unions, fat-Cantor-style cell products and polyline arcs. Every
// constructor reports a mesh that upper-bounds the covering radius of the
// true set by its samples, so sup/margin statements can be promoted from
// samples to the whole set via Lipschitz inflation.

#include <cstddef>
#include <numbers>

#include "avoidapprox/core.hpp"

namespace avoidapprox {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DiscSpec {
  Complex center;
  double radius = 1.0;
};

struct CompactSetSample {
  std::vector<Complex> all_points;
  std::vector<Complex> boundary_points;
  std::vector<Complex> interior_points;
  std::vector<Complex> closure_interior_points;

  // Aligned with all_points: component id (disc / cell index, 0 for arcs),
  // boundary flag, closure-of-interior flag.
  std::vector<int> component;
  std::vector<char> is_boundary;
  std::vector<char> is_closure_interior;

  // Covering radius bounds: mesh for the whole set by all_points,
  // boundary_mesh for the boundary by boundary_points.
  double mesh = 0.0;
  double boundary_mesh = 0.0;

  // Min distance between distinct components of the closed interior;
  // 0 when there are fewer than two.
  double component_separation = 0.0;
  bool tangency = false;

  std::string kind;

  Complex centroid() const { return centroid_of(all_points); }
  double diameter_bound() const { return BoundingBox::of(all_points).diag(); }
};

inline double min_distance_to(const CompactSetSample& set, Complex z) {
  double m = std::numeric_limits<double>::infinity();
  for (Complex b : set.boundary_points) m = std::min(m, std::abs(z - b));
  return std::isfinite(m) ? m : 0.0;
}

namespace detail {

inline void push_point(CompactSetSample& s, Complex z, int comp, bool boundary, bool closure) {
  s.all_points.push_back(z);
  s.component.push_back(comp);
  s.is_boundary.push_back(boundary ? 1 : 0);
  s.is_closure_interior.push_back(closure ? 1 : 0);
  if (boundary) s.boundary_points.push_back(z);
  if (!boundary) s.interior_points.push_back(z);
  if (closure) s.closure_interior_points.push_back(z);
}

}  // namespace detail

// Union of closed discs. Boundary circles get samples_per_disc points each;
// interiors get polar grids. With interior_samples_per_disc == 0 the ring
// spacing matches the boundary arc spacing, so the reported mesh is the arc
// spacing 2*pi*r/n itself. Discs must be pairwise disjoint; exact tangency
// is constructible but flagged.
inline CompactSetSample make_disc_union(const std::vector<DiscSpec>& discs,
                                        std::size_t samples_per_disc,
                                        std::size_t interior_samples_per_disc = 0) {
  if (discs.empty()) throw GeometryError("make_disc_union: no discs");
  if (samples_per_disc < 8) throw GeometryError("make_disc_union: need at least 8 boundary samples");
  for (const auto& d : discs)
    if (!(d.radius > 0.0)) throw GeometryError("make_disc_union: radius must be positive");

  CompactSetSample s;
  s.kind = "disc_union";

  const double tangency_tol = 1e-12;
  double separation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      const double gap =
          std::abs(discs[i].center - discs[j].center) - discs[i].radius - discs[j].radius;
      if (gap < -tangency_tol)
        throw GeometryError("make_disc_union: disc interiors intersect (unsupported geometry)");
      if (std::abs(gap) <= tangency_tol) {
        s.tangency = true;
        separation = 0.0;
      } else {
        separation = std::min(separation, gap);
      }
    }
  }
  s.component_separation = discs.size() < 2 ? 0.0 : separation;

  double mesh = 0.0, bmesh = 0.0;
  for (std::size_t di = 0; di < discs.size(); ++di) {
    const auto& d = discs[di];
    const std::size_t n = samples_per_disc;
    const double arc = 2.0 * std::numbers::pi * d.radius / static_cast<double>(n);
    bmesh = std::max(bmesh, arc);

    for (std::size_t k = 0; k < n; ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      detail::push_point(s, d.center + d.radius * Complex{std::cos(th), std::sin(th)},
                         static_cast<int>(di), true, true);
    }

    // Ring spacing: match the boundary arc spacing unless an explicit
    // interior budget is given.
    double h = arc;
    if (interior_samples_per_disc > 0)
      h = d.radius * std::sqrt(std::numbers::pi / static_cast<double>(interior_samples_per_disc));
    h = std::min(h, d.radius);

    detail::push_point(s, d.center, static_cast<int>(di), false, true);
    const auto rings = static_cast<std::size_t>(std::floor(d.radius / h));
    for (std::size_t m = 1; m <= rings; ++m) {
      const double rho = static_cast<double>(m) * h;
      if (rho >= d.radius) break;
      const auto cnt = std::max<std::size_t>(
          6, static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi * rho / h)));
      for (std::size_t k = 0; k < cnt; ++k) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(cnt);
        detail::push_point(s, d.center + rho * Complex{std::cos(th), std::sin(th)},
                           static_cast<int>(di), false, true);
      }
    }
    // Radial gap <= h, angular gap <= ~h, rim band <= h: h covers the disc.
    mesh = std::max(mesh, std::max(arc, h));
  }

  s.mesh = mesh;
  s.boundary_mesh = bmesh;
  return s;
}

// Closed intervals of the depth-level approximant of a fat Cantor set on
// [0,1]: step k removes, from each of the 2^(k-1) intervals, an open middle
// gap so that the total length removed at step k is removal_ratio * 2^(1-k).
inline std::vector<std::pair<double, double>> fat_cantor_intervals(double removal_ratio,
                                                                   std::size_t depth) {
  if (!(removal_ratio > 0.0 && removal_ratio < 1.0))
    throw GeometryError("fat_cantor_intervals: removal_ratio must lie in (0,1)");
  if (depth > 8) throw GeometryError("fat_cantor_intervals: depth > 8 is out of scope");
  std::vector<std::pair<double, double>> iv{{0.0, 1.0}};
  for (std::size_t k = 1; k <= depth; ++k) {
    const double gap = removal_ratio * std::pow(0.25, static_cast<double>(k - 1));
    std::vector<std::pair<double, double>> next;
    next.reserve(iv.size() * 2);
    for (auto [a, b] : iv) {
      const double len = b - a;
      if (gap >= len)
        throw GeometryError("fat_cantor_intervals: parameters remove entire intervals");
      const double half = (len - gap) / 2.0;
      next.emplace_back(a, a + half);
      next.emplace_back(b - half, b);
    }
    iv = std::move(next);
  }
  return iv;
}

enum class FatCantorKind { S_plus_iS, interval_plus_iS };

// Depth-level approximant of S+iS or [0,1]+iS as a finite union of closed
// rectangular cells, sampled on per-cell grids. The cells are treated as
// boundary throughout (the empty-interior regime): interior_points stays
// empty and every sample is tagged boundary.
inline CompactSetSample make_fat_cantor_product(FatCantorKind kind, double removal_ratio,
                                                std::size_t depth, std::size_t per_cell_samples) {
  if (per_cell_samples < 1) throw GeometryError("make_fat_cantor_product: need samples");
  const auto iv = fat_cantor_intervals(removal_ratio, depth);
  const std::vector<std::pair<double, double>> xs =
      kind == FatCantorKind::S_plus_iS ? iv
                                       : std::vector<std::pair<double, double>>{{0.0, 1.0}};
  const auto& ys = iv;

  CompactSetSample s;
  s.kind = "fat_cantor_product";
  s.component_separation = 0.0;

  double mesh = 0.0;
  int comp = 0;
  for (auto [ya, yb] : ys) {
    for (auto [xa, xb] : xs) {
      const double w = xb - xa, h = yb - ya;
      // Split the per-cell budget across the two axes in proportion to the
      // cell aspect, keeping at least a 2x2 corner-inclusive grid.
      const double spacing = std::sqrt(w * h / static_cast<double>(per_cell_samples));
      const auto nx = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(w / spacing)) + 1);
      const auto ny = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(h / spacing)) + 1);
      const double dx = w / static_cast<double>(nx - 1);
      const double dy = h / static_cast<double>(ny - 1);
      mesh = std::max(mesh, 0.5 * std::hypot(dx, dy));
      for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i)
          detail::push_point(s,
                             Complex{xa + static_cast<double>(i) * dx,
                                     ya + static_cast<double>(j) * dy},
                             comp, true, false);
      ++comp;
    }
  }
  s.mesh = mesh;
  s.boundary_mesh = mesh;
  return s;
}

namespace detail {

inline double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Proper or touching intersection of closed segments [a,b] and [c,d].
inline bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
  const auto orient = [](Complex p, Complex q, Complex r) {
    const double v = cross(q - p, r - p);
    const double scale = std::abs(q - p) * std::abs(r - p) + 1e-300;
    if (std::abs(v) <= 1e-12 * scale) return 0;
    return v > 0 ? 1 : -1;
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  const auto on = [&](Complex p, Complex q, Complex r) {
    return orient(p, q, r) == 0 && r.real() <= std::max(p.real(), q.real()) + 1e-12 &&
           r.real() >= std::min(p.real(), q.real()) - 1e-12 &&
           r.imag() <= std::max(p.imag(), q.imag()) + 1e-12 &&
           r.imag() >= std::min(p.imag(), q.imag()) - 1e-12;
  };
  return on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b);
}

}  // namespace detail

// Simple polyline arc through the control points, sampled uniformly by arc
// length. All samples are boundary; the mesh is half the sample spacing.
inline CompactSetSample make_arc(const std::vector<Complex>& control_points, std::size_t samples) {
  if (control_points.size() < 2) throw GeometryError("make_arc: need at least 2 control points");
  if (samples < 2) throw GeometryError("make_arc: need at least 2 samples");

  const std::size_t nseg = control_points.size() - 1;
  for (std::size_t i = 0; i < nseg; ++i) {
    if (std::abs(control_points[i + 1] - control_points[i]) < 1e-14)
      throw GeometryError("make_arc: degenerate zero-length segment");
    for (std::size_t j = i + 1; j < nseg; ++j) {
      const bool adjacent = (j == i + 1);
      if (adjacent) {
        // Shared endpoint allowed; reject a doubling-back overlap.
        const Complex u = control_points[i + 1] - control_points[i];
        const Complex v = control_points[j + 1] - control_points[j];
        const double cr = detail::cross(u, v);
        const double dt = u.real() * v.real() + u.imag() * v.imag();
        if (std::abs(cr) <= 1e-12 * std::abs(u) * std::abs(v) && dt < 0.0)
          throw GeometryError("make_arc: polyline doubles back on itself");
        continue;
      }
      if (detail::segments_intersect(control_points[i], control_points[i + 1],
                                     control_points[j], control_points[j + 1]))
        throw GeometryError("make_arc: polyline self-intersects");
    }
  }

  std::vector<double> cum{0.0};
  for (std::size_t i = 0; i < nseg; ++i)
    cum.push_back(cum.back() + std::abs(control_points[i + 1] - control_points[i]));
  const double total = cum.back();

  CompactSetSample s;
  s.kind = "arc";
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = total * static_cast<double>(k) / static_cast<double>(samples - 1);
    std::size_t seg = 0;
    while (seg + 1 < nseg && cum[seg + 1] < t) ++seg;
    const double local = (t - cum[seg]) / std::max(cum[seg + 1] - cum[seg], 1e-300);
    const Complex z = control_points[seg] +
                      std::clamp(local, 0.0, 1.0) * (control_points[seg + 1] - control_points[seg]);
    detail::push_point(s, z, 0, true, false);
  }
  s.mesh = 0.5 * total / static_cast<double>(samples - 1);
  s.boundary_mesh = s.mesh;
  s.component_separation = 0.0;
  return s;
}

// Union of two sampled sets (used to attach auxiliary pieces such as arcs to
// a disc union). Mesh bounds combine as the max; component ids of b are
// shifted past a's.
inline CompactSetSample merge_samples(const CompactSetSample& a, const CompactSetSample& b) {
  CompactSetSample s = a;
  s.kind = a.kind + "+" + b.kind;
  int shift = 0;
  for (int c : a.component) shift = std::max(shift, c + 1);
  for (std::size_t i = 0; i < b.all_points.size(); ++i)
    detail::push_point(s, b.all_points[i], b.component[i] + shift, b.is_boundary[i] != 0,
                       b.is_closure_interior[i] != 0);
  s.mesh = std::max(a.mesh, b.mesh);
  s.boundary_mesh = std::max(a.boundary_mesh, b.boundary_mesh);
  s.component_separation = std::min(a.component_separation, b.component_separation);
  s.tangency = a.tangency || b.tangency;
  return s;
}

// Rebuilds the same geometry with sample counts scaled by `factor`
// (re-verification meshes).
inline CompactSetSample densify_disc_union(const std::vector<DiscSpec>& discs,
                                           std::size_t samples_per_disc,
                                           std::size_t interior_samples_per_disc,
                                           std::size_t factor) {
  return make_disc_union(discs, samples_per_disc * factor,
                         interior_samples_per_disc == 0 ? 0 : interior_samples_per_disc * factor);
}

}  // namespace avoidapprox
