#pragma once

// Shared scalar types, tolerance constants and small geometry helpers.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace avoidapprox {

using Complex = std::complex<double>;

namespace tol {
// Trailing-coefficient trim, relative to the largest coefficient magnitude.
inline constexpr double trim_rel = 1e-13;
// Root residual acceptance, relative to the evaluated coefficient scale.
inline constexpr double residual = 1e-10;
// Multiset matching of recovered vs. seeded roots.
inline constexpr double root_match = 1e-7;
// Multiplicity detection. An m-fold root computed in doubles scatters like
// eps^(1/m) around the true value (measured: ~8e-5 for triple and ~2e-3 for
// five-fold roots at unit scale), so this sits far above root_match; roots
// that are genuinely distinct but closer than this report as one cluster.
inline constexpr double root_cluster = 1e-3;
// Forbidden-value deduplication.
inline constexpr double dedupe = 1e-12;
// Inflation applied to sampled derivative maxima to cover inter-sample
// variation at the mesh sizes produced by the set constructors.
inline constexpr double derivative_safety = 1.05;
}  // namespace tol

struct BoundingBox {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;

  bool contains(Complex z, double slack = 0.0) const {
    return z.real() >= xmin - slack && z.real() <= xmax + slack &&
           z.imag() >= ymin - slack && z.imag() <= ymax + slack;
  }
  double diag() const { return std::hypot(xmax - xmin, ymax - ymin); }

  static BoundingBox of(std::span<const Complex> pts) {
    if (pts.empty()) return {};
    BoundingBox b{pts[0].real(), pts[0].real(), pts[0].imag(), pts[0].imag()};
    for (Complex z : pts) {
      b.xmin = std::min(b.xmin, z.real());
      b.xmax = std::max(b.xmax, z.real());
      b.ymin = std::min(b.ymin, z.imag());
      b.ymax = std::max(b.ymax, z.imag());
    }
    return b;
  }
};

inline Complex centroid_of(std::span<const Complex> pts) {
  if (pts.empty()) return {};
  Complex s{};
  for (Complex z : pts) s += z;
  return s / static_cast<double>(pts.size());
}

// Spatial hash over a uniform grid for nearest-point queries.
class NearestIndex {
 public:
  NearestIndex() = default;

  explicit NearestIndex(std::vector<Complex> points) : pts_(std::move(points)) {
    if (pts_.empty()) return;
    box_ = BoundingBox::of(pts_);
    const double diag = std::max(box_.diag(), 1e-300);
    nx_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(pts_.size()))));
    ny_ = nx_;
    cw_ = std::max((box_.xmax - box_.xmin) / static_cast<double>(nx_), diag * 1e-12);
    ch_ = std::max((box_.ymax - box_.ymin) / static_cast<double>(ny_), diag * 1e-12);
    cells_.assign(nx_ * ny_, {});
    for (std::size_t i = 0; i < pts_.size(); ++i) cells_[cell_of(pts_[i])].push_back(i);
  }

  bool empty() const { return pts_.empty(); }
  const std::vector<Complex>& points() const { return pts_; }

  // Index of the nearest stored point to z.
  std::size_t nearest(Complex z) const {
    if (pts_.empty()) throw std::logic_error("NearestIndex: no points");
    const auto [cx, cy] = clamp_cell(z);
    std::size_t best = pts_.size();
    double best_d = std::numeric_limits<double>::infinity();
    // Expand rings until a hit is found, then one extra ring to be safe.
    const std::size_t max_ring = std::max(nx_, ny_);
    bool found_ring_done = false;
    for (std::size_t ring = 0; ring <= max_ring; ++ring) {
      const long r = static_cast<long>(ring);
      for (long dy = -r; dy <= r; ++dy) {
        for (long dx = -r; dx <= r; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
          const long gx = static_cast<long>(cx) + dx;
          const long gy = static_cast<long>(cy) + dy;
          if (gx < 0 || gy < 0 || gx >= static_cast<long>(nx_) || gy >= static_cast<long>(ny_)) continue;
          for (std::size_t i : cells_[static_cast<std::size_t>(gy) * nx_ + static_cast<std::size_t>(gx)]) {
            const double d = std::abs(pts_[i] - z);
            if (d < best_d) {
              best_d = d;
              best = i;
            }
          }
        }
      }
      if (best != pts_.size()) {
        if (found_ring_done) break;
        found_ring_done = true;  // scan one more ring: diagonal neighbours may be closer
      }
    }
    return best;
  }

 private:
  std::size_t cell_of(Complex z) const {
    const auto [cx, cy] = clamp_cell(z);
    return cy * nx_ + cx;
  }
  std::pair<std::size_t, std::size_t> clamp_cell(Complex z) const {
    const double fx = (z.real() - box_.xmin) / cw_;
    const double fy = (z.imag() - box_.ymin) / ch_;
    const auto cx = static_cast<std::size_t>(std::clamp(fx, 0.0, static_cast<double>(nx_ - 1)));
    const auto cy = static_cast<std::size_t>(std::clamp(fy, 0.0, static_cast<double>(ny_ - 1)));
    return {cx, cy};
  }

  std::vector<Complex> pts_;
  BoundingBox box_;
  std::size_t nx_ = 0, ny_ = 0;
  double cw_ = 1.0, ch_ = 1.0;
  std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace avoidapprox
