#pragma once

// Complex polynomial arithmetic: Horner evaluation, sampled sup norms,
// simultaneous root finding (Aberth-Ehrlich), reconstruction from roots and
// derivative bounds for margin certification.

#include <cstddef>
#include <numbers>
#include <utility>

#include "avoidapprox/core.hpp"

namespace avoidapprox {

struct RootSolveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Polynomial {
 public:
  // Tag for coefficient vectors whose leading entry is structurally nonzero
  // (products built from roots); only exact-zero tails are stripped.
  struct exact_t {};

  Polynomial() : coeffs_{Complex{}} {}

  explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Complex{});
    trim(trim_cut());
  }

  Polynomial(std::vector<Complex> coeffs, exact_t) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Complex{});
    trim(0.0);
  }

  Polynomial(std::initializer_list<Complex> coeffs)
      : Polynomial(std::vector<Complex>(coeffs)) {}

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial identity() { return Polynomial({Complex{}, Complex{1.0}}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex leading() const { return coeffs_.back(); }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Complex{}; }

  Complex operator()(Complex z) const {
    Complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() == 1) return Polynomial{};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
  }

  // p + c, constant shift.
  Polynomial shifted(Complex c) const {
    std::vector<Complex> cs = coeffs_;
    cs[0] += c;
    return Polynomial(std::move(cs), exact_t{});
  }

  Polynomial operator+(const Polynomial& o) const { return combine(o, 1.0); }
  Polynomial operator-(const Polynomial& o) const { return combine(o, -1.0); }

  Polynomial operator*(Complex s) const {
    std::vector<Complex> cs = coeffs_;
    for (auto& c : cs) c *= s;
    return Polynomial(std::move(cs));
  }

  double max_coeff_magnitude() const {
    double m = 0.0;
    for (Complex c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  // Sum_k |c_k| r^k, the natural scale of rounding noise in an evaluation at |z| = r.
  double eval_scale(double r) const {
    double s = 0.0, rk = 1.0;
    for (Complex c : coeffs_) {
      s += std::abs(c) * rk;
      rk *= r;
    }
    return s;
  }

 private:
  double trim_cut() const {
    double m = 0.0;
    for (Complex c : coeffs_) m = std::max(m, std::abs(c));
    return m * tol::trim_rel;
  }

  void trim(double cut) {
    while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
  }

  Polynomial combine(const Polynomial& o, double sign) const {
    std::vector<Complex> cs(std::max(coeffs_.size(), o.coeffs_.size()), Complex{});
    for (std::size_t k = 0; k < coeffs_.size(); ++k) cs[k] += coeffs_[k];
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) cs[k] += sign * o.coeffs_[k];
    return Polynomial(std::move(cs));
  }

  std::vector<Complex> coeffs_;
};

inline Complex eval(const Polynomial& p, Complex z) { return p(z); }

inline double sup_on(const Polynomial& p, std::span<const Complex> samples) {
  if (samples.empty()) throw std::invalid_argument("sup_on: empty sample list");
  double m = 0.0;
  for (Complex z : samples) m = std::max(m, std::abs(p(z)));
  return m;
}

inline double min_abs_on(const Polynomial& p, std::span<const Complex> samples, Complex value = {}) {
  if (samples.empty()) throw std::invalid_argument("min_abs_on: empty sample list");
  double m = std::numeric_limits<double>::infinity();
  for (Complex z : samples) m = std::min(m, std::abs(p(z) - value));
  return m;
}

// Sampled max of |p'|, inflated by the safety factor so it upper-bounds the
// derivative between samples at the mesh sizes in scope.
inline double derivative_sup_bound(const Polynomial& p, std::span<const Complex> samples) {
  return tol::derivative_safety * sup_on(p.derivative(), samples);
}

// Rounding noise of a Horner evaluation anywhere in |z| <= radius; margins
// below this are indistinguishable from zero.
inline double eval_noise_floor(const Polynomial& p, double radius) {
  return 4.0 * static_cast<double>(p.degree() + 1) * std::numeric_limits<double>::epsilon() *
         p.eval_scale(radius);
}

struct RootFactorization {
  Complex leading{1.0};
  std::vector<Complex> roots;
};

inline Polynomial from_roots(Complex leading, std::span<const Complex> roots) {
  if (leading == Complex{} && !roots.empty())
    throw std::invalid_argument("from_roots: zero leading coefficient");
  std::vector<Complex> c{leading};
  c.reserve(roots.size() + 1);
  for (Complex r : roots) {
    c.push_back(c.back());
    for (std::size_t k = c.size() - 2; k > 0; --k) c[k] = c[k - 1] - r * c[k];
    c[0] = -r * c[0];
  }
  return Polynomial(std::move(c), Polynomial::exact_t{});
}

inline Polynomial from_roots(Complex leading, std::initializer_list<Complex> roots) {
  return from_roots(leading, std::span<const Complex>(roots.begin(), roots.size()));
}

namespace detail {

// Value and derivative in one Horner pass.
inline std::pair<Complex, Complex> horner2(std::span<const Complex> c, Complex z) {
  Complex p{}, d{};
  for (std::size_t k = c.size(); k-- > 0;) {
    d = d * z + p;
    p = p * z + c[k];
  }
  return {p, d};
}

}  // namespace detail

// All roots of p, with multiplicity by repetition. Simultaneous
// Aberth-Ehrlich iteration started on a Cauchy-bound circle; a root is
// accepted when its residual drops below tol::residual relative to the
// coefficient scale at that point.
inline RootFactorization roots(const Polynomial& p, int max_iters = 500) {
  if (p.degree() < 1) throw std::invalid_argument("roots: degree >= 1 required");
  const Complex lead = p.leading();

  // Structural zeros at the origin deflate exactly; the relative residual
  // criterion below is unattainable at a root with zero constant term.
  std::vector<Complex> a(p.coeffs().size());
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = p.coeffs()[k] / lead;
  std::vector<Complex> zero_roots;
  while (a.size() > 1 && a.front() == Complex{}) {
    zero_roots.push_back(Complex{});
    a.erase(a.begin());
  }
  const int n = static_cast<int>(a.size()) - 1;
  if (n == 0) return {lead, std::move(zero_roots)};
  if (n == 1) {
    zero_roots.push_back(-a[0]);
    return {lead, std::move(zero_roots)};
  }

  double cauchy = 0.0;
  for (int k = 0; k < n; ++k) cauchy = std::max(cauchy, std::abs(a[k]));
  const double radius = 1.0 + cauchy;

  // Asymmetric start angles so symmetric polynomials do not stall.
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n + 0.7;
    z[k] = radius * Complex{std::cos(theta), std::sin(theta)};
  }

  auto scale_at = [&a](double r) {
    double s = 0.0, rk = 1.0;
    for (Complex c : a) {
      s += std::abs(c) * rk;
      rk *= r;
    }
    return std::max(s, 1e-300);
  };

  // Iterate to numerical stagnation, not just to the acceptance residual:
  // simple roots with modest conditioning then land within a few ulps, and
  // multiple roots reach their attainable noise-floor scatter.
  const double meps = std::numeric_limits<double>::epsilon();
  std::vector<char> frozen(n, 0);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      const auto [pv, dv] = detail::horner2(a, z[i]);
      if (std::abs(pv) <= 8.0 * meps * static_cast<double>(n) * scale_at(std::abs(z[i]))) {
        frozen[i] = 1;
        continue;
      }
      all = false;
      Complex w = (dv == Complex{}) ? Complex{} : pv / dv;
      Complex s{};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex diff = z[i] - z[j];
        if (std::abs(diff) < 1e-280) {
          // Collided iterates: nudge deterministically and retry next sweep.
          z[i] += radius * 1e-6 * Complex{1.0, 1.0} * static_cast<double>(i + 1);
          diff = z[i] - z[j];
        }
        s += 1.0 / diff;
      }
      if (w == Complex{}) {
        // Stationary point of p; step off it.
        z[i] += radius * 1e-6 * Complex{0.5, 1.0} * static_cast<double>(i + 1);
        continue;
      }
      const Complex denom = 1.0 - w * s;
      const Complex step = (std::abs(denom) < 1e-280) ? w : w / denom;
      z[i] -= step;
      if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z[i]))) frozen[i] = 1;
    }
    if (all) break;
  }

  for (int i = 0; i < n; ++i) {
    const auto [pv, dv] = detail::horner2(a, z[i]);
    (void)dv;
    if (std::abs(pv) > tol::residual * scale_at(std::abs(z[i])))
      throw RootSolveError("roots: Aberth iteration did not converge (ill-conditioned input?)");
  }
  zero_roots.insert(zero_roots.end(), z.begin(), z.end());
  return {lead, std::move(zero_roots)};
}

struct RootCluster {
  Complex value;       // cluster centroid
  int multiplicity;
};

// Groups roots whose pairwise chains stay within tol; the centroid of a
// numerically scattered m-fold root recovers the true value far more
// accurately than any single member.
inline std::vector<RootCluster> cluster_roots(std::span<const Complex> roots,
                                              double tol_cluster = tol::root_cluster) {
  const std::size_t m = roots.size();
  std::vector<char> used(m, 0);
  std::vector<RootCluster> out;
  for (std::size_t i = 0; i < m; ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> grp{i};
    used[i] = 1;
    for (std::size_t g = 0; g < grp.size(); ++g) {
      for (std::size_t j = 0; j < m; ++j) {
        if (used[j]) continue;
        if (std::abs(roots[grp[g]] - roots[j]) < tol_cluster) {
          used[j] = 1;
          grp.push_back(j);
        }
      }
    }
    Complex c{};
    for (std::size_t j : grp) c += roots[j];
    out.push_back({c / static_cast<double>(grp.size()), static_cast<int>(grp.size())});
  }
  return out;
}

// Greedy multiset match: true iff each of a can be paired with a distinct
// element of b within tol.
inline bool roots_match(std::span<const Complex> a, std::span<const Complex> b,
                        double tol_match = tol::root_match) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (Complex x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        bi = j;
      }
    }
    if (bi == b.size() || best > tol_match) return false;
    used[bi] = 1;
  }
  return true;
}

}  // namespace avoidapprox
