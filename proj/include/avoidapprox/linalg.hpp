#pragma once

// Tall-skinny complex least squares via Householder QR with column append,
// so a degree sweep factors the full-degree matrix only once.

#include <cstddef>

#include "avoidapprox/core.hpp"
#include "avoidapprox/poly.hpp"

namespace avoidapprox {

namespace detail {

// beta coefficients in the scaled basis ((z-mu)/r)^k, expanded to plain
// monomial coefficients by Horner in coefficient space.
inline Polynomial unscale_fit(std::span<const Complex> beta, Complex mu, double r) {
  std::vector<Complex> c{beta.empty() ? Complex{} : beta.back()};
  const Complex s{1.0 / r};
  const Complex t = -mu / r;
  for (std::size_t k = beta.size() - 1; k-- > 0;) {
    std::vector<Complex> next(c.size() + 1, Complex{});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += s * c[i];
      next[i] += t * c[i];
    }
    next[0] += beta[k];
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

}  // namespace detail

class IncrementalQR {
 public:
  explicit IncrementalQR(std::size_t rows) : m_(rows) {}

  // Must be called before any add_column.
  void set_rhs(std::vector<Complex> b) {
    if (b.size() != m_) throw std::invalid_argument("IncrementalQR: rhs size mismatch");
    if (!r_cols_.empty()) throw std::logic_error("IncrementalQR: rhs must be set first");
    qtb_ = std::move(b);
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return r_cols_.size(); }

  void add_column(std::vector<Complex> col) {
    if (col.size() != m_) throw std::invalid_argument("IncrementalQR: column size mismatch");
    if (qtb_.empty() && m_ > 0) throw std::logic_error("IncrementalQR: set rhs first");
    const std::size_t k = r_cols_.size();
    if (k >= m_) throw std::logic_error("IncrementalQR: more columns than rows");

    for (std::size_t j = 0; j < k; ++j) apply_reflector(j, col);

    // Householder vector for rows k..m: maps the tail onto alpha * e_k.
    double norm = 0.0;
    for (std::size_t i = k; i < m_; ++i) norm += std::norm(col[i]);
    norm = std::sqrt(norm);

    std::vector<Complex> v(m_ - k, Complex{});
    Complex alpha{};
    if (norm > 0.0) {
      const Complex x0 = col[k];
      const Complex phase = (x0 == Complex{}) ? Complex{1.0} : x0 / std::abs(x0);
      alpha = -phase * norm;
      for (std::size_t i = k; i < m_; ++i) v[i - k] = col[i];
      v[0] -= alpha;
      double vn = 0.0;
      for (const Complex& w : v) vn += std::norm(w);
      if (vn > 0.0) {
        const double inv = 1.0 / std::sqrt(vn);
        for (Complex& w : v) w *= inv;
      }
    }
    hh_.push_back(std::move(v));

    std::vector<Complex> rcol(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(k));
    rcol.push_back(alpha);
    r_cols_.push_back(std::move(rcol));

    apply_reflector(k, qtb_);
  }

  // Coefficients for the current column set (back substitution on R).
  std::vector<Complex> solve() const {
    const std::size_t n = r_cols_.size();
    std::vector<Complex> x(n, Complex{});
    for (std::size_t i = n; i-- > 0;) {
      Complex s = qtb_[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= r_cols_[j][i] * x[j];
      const Complex d = r_cols_[i][i];
      x[i] = (std::abs(d) < 1e-300) ? Complex{} : s / d;
    }
    return x;
  }

  // Two-norm of the unreachable part of the rhs: a lower bound on the
  // weighted residual for the current column set.
  double residual_norm() const {
    double s = 0.0;
    for (std::size_t i = r_cols_.size(); i < m_; ++i) s += std::norm(qtb_[i]);
    return std::sqrt(s);
  }

 private:
  void apply_reflector(std::size_t j, std::vector<Complex>& y) const {
    const auto& v = hh_[j];
    if (v.empty()) return;
    Complex dot{};
    for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(v[i]) * y[j + i];
    dot *= 2.0;
    for (std::size_t i = 0; i < v.size(); ++i) y[j + i] -= dot * v[i];
  }

  std::size_t m_;
  std::vector<std::vector<Complex>> hh_;      // unit reflector vectors, tail rows only
  std::vector<std::vector<Complex>> r_cols_;  // column j: R(0..j, j)
  std::vector<Complex> qtb_;
};

}  // namespace avoidapprox
