#pragma once

// Function representations the pipeline can evaluate: polynomials, power
// series with a validity radius, sample tables (nearest-sample lookup) and
// per-disc rescaled wrappers.

#include <memory>

#include "avoidapprox/compact_set.hpp"
#include "avoidapprox/core.hpp"
#include "avoidapprox/poly.hpp"

namespace avoidapprox {

struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FunctionEvaluator {
 public:
  enum class Kind { polynomial, taylor_series, callable_samples, disc_rescaled };

  FunctionEvaluator() : kind_(Kind::polynomial) {}

  static FunctionEvaluator from_polynomial(Polynomial p) {
    FunctionEvaluator f;
    f.kind_ = Kind::polynomial;
    f.poly_ = std::move(p);
    return f;
  }

  static FunctionEvaluator constant(Complex c) { return from_polynomial(Polynomial::constant(c)); }
  static FunctionEvaluator identity() { return from_polynomial(Polynomial::identity()); }

  // Power series sum c_k (z - center)^k, declared valid for |z-center| < radius.
  static FunctionEvaluator taylor(Complex center, std::vector<Complex> coeffs, double radius) {
    if (coeffs.empty()) throw EvaluationError("taylor: empty coefficient list");
    if (!(radius > 0.0)) throw EvaluationError("taylor: radius must be positive");
    FunctionEvaluator f;
    f.kind_ = Kind::taylor_series;
    f.center_ = center;
    f.series_ = std::move(coeffs);
    f.radius_ = radius;
    return f;
  }

  // scale * exp(rate * z) + shift as a series about 0, truncated far below
  // double rounding on |z| <= extent.
  static FunctionEvaluator exp_builtin(Complex scale, Complex rate, Complex shift, double extent) {
    const double hump = std::abs(rate) * extent;
    const double value_scale = std::abs(scale) * std::exp(hump) + std::abs(shift) + 1.0;
    std::vector<Complex> c{scale + shift};
    Complex term = scale;
    double edge = 1.0;  // extent^k
    for (int k = 1; k < 512; ++k) {
      term *= rate / static_cast<double>(k);
      c.push_back(term);
      edge *= extent;
      if (static_cast<double>(k) > hump && std::abs(term) * edge < 1e-18 * value_scale) break;
    }
    return taylor(Complex{}, std::move(c), 2.0 * extent + 1.0);
  }

  static FunctionEvaluator from_samples(std::vector<Complex> points, std::vector<Complex> values) {
    if (points.size() != values.size() || points.empty())
      throw EvaluationError("from_samples: points/values mismatch");
    FunctionEvaluator f;
    f.kind_ = Kind::callable_samples;
    f.values_ = std::move(values);
    f.nearest_ = std::make_shared<NearestIndex>(std::move(points));
    return f;
  }

  // g(z) = base(c_j + (1-xi_j)(z - c_j)) on disc j.
  static FunctionEvaluator disc_rescaled(FunctionEvaluator base, std::vector<DiscSpec> discs,
                                         std::vector<double> xi) {
    if (discs.size() != xi.size() || discs.empty())
      throw EvaluationError("disc_rescaled: discs/xi mismatch");
    FunctionEvaluator f;
    f.kind_ = Kind::disc_rescaled;
    f.base_ = std::make_shared<FunctionEvaluator>(std::move(base));
    f.discs_ = std::move(discs);
    f.xi_ = std::move(xi);
    return f;
  }

  Kind kind() const { return kind_; }
  const Polynomial& poly() const { return poly_; }
  const std::vector<Complex>& series() const { return series_; }
  Complex series_center() const { return center_; }
  double series_radius() const { return radius_; }
  const std::vector<double>& xi() const { return xi_; }

  Complex operator()(Complex z) const {
    switch (kind_) {
      case Kind::polynomial:
        return poly_(z);
      case Kind::taylor_series: {
        const Complex w = z - center_;
        Complex acc{};
        for (auto it = series_.rbegin(); it != series_.rend(); ++it) acc = acc * w + *it;
        return acc;
      }
      case Kind::callable_samples:
        return values_[nearest_->nearest(z)];
      case Kind::disc_rescaled: {
        for (std::size_t j = 0; j < discs_.size(); ++j) {
          const auto& d = discs_[j];
          if (std::abs(z - d.center) <= d.radius * (1.0 + 1e-12) + 1e-12)
            return (*base_)(d.center + (1.0 - xi_[j]) * (z - d.center));
        }
        throw EvaluationError("disc_rescaled: point outside every disc");
      }
    }
    throw EvaluationError("FunctionEvaluator: bad kind");
  }

  std::vector<Complex> eval_all(std::span<const Complex> zs) const {
    std::vector<Complex> out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) out[i] = (*this)(zs[i]);
    return out;
  }

  double sup_abs_on(std::span<const Complex> zs) const {
    double m = 0.0;
    for (Complex z : zs) m = std::max(m, std::abs((*this)(z)));
    return m;
  }

  // Sum_{k>n} |c_k| r^k over the stored series coefficients.
  double taylor_tail(double r, std::size_t n) const {
    if (kind_ != Kind::taylor_series) throw EvaluationError("taylor_tail: not a series");
    double s = 0.0;
    double rk = std::pow(r, static_cast<double>(n) + 1.0);
    for (std::size_t k = n + 1; k < series_.size(); ++k) {
      s += std::abs(series_[k]) * rk;
      rk *= r;
    }
    return s;
  }

 private:
  Kind kind_;
  Polynomial poly_;
  Complex center_{};
  std::vector<Complex> series_;
  double radius_ = 0.0;
  std::vector<Complex> values_;
  std::shared_ptr<NearestIndex> nearest_;
  std::shared_ptr<const FunctionEvaluator> base_;
  std::vector<DiscSpec> discs_;
  std::vector<double> xi_;
};

}  // namespace avoidapprox
