#pragma once

// Finite truncations of the countable forbidden sets: explicit lists,
// Gaussian rationals up to a denominator bound and algebraic numbers up to
// degree/height bounds. Enumeration order is deterministic
// (height-then-lexicographic) so downstream perturbation schedules are
// reproducible.

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>

#include "avoidapprox/core.hpp"
#include "avoidapprox/poly.hpp"

namespace avoidapprox {

struct EnumerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ForbiddenSource { explicit_list, gaussian_rational, algebraic };

inline std::string to_string(ForbiddenSource s) {
  switch (s) {
    case ForbiddenSource::explicit_list: return "explicit";
    case ForbiddenSource::gaussian_rational: return "gaussian_rational";
    case ForbiddenSource::algebraic: return "algebraic";
  }
  return "?";
}

struct ForbiddenSet {
  std::vector<Complex> values;  // pairwise distinct beyond tol::dedupe
  ForbiddenSource source = ForbiddenSource::explicit_list;
  std::map<std::string, double> truncation_params;
  // For height enumerations: any point of the region lies within this
  // distance of some enumerated value (completeness witness).
  std::optional<double> claimed_cover_radius;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
};

inline ForbiddenSet explicit_set(const std::vector<Complex>& values) {
  ForbiddenSet out;
  out.source = ForbiddenSource::explicit_list;
  for (Complex v : values) {
    bool dup = false;
    for (Complex w : out.values)
      if (std::abs(v - w) <= tol::dedupe) {
        dup = true;
        break;
      }
    if (!dup) out.values.push_back(v);
  }
  return out;
}

namespace detail {

struct Rational {
  long long num;
  long long den;  // > 0, reduced
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// All reduced fractions with denominator <= max_den in [lo, hi], with their
// reduced denominator as height.
inline std::vector<Rational> rationals_in(double lo, double hi, long long max_den) {
  std::vector<Rational> out;
  for (long long den = 1; den <= max_den; ++den) {
    const auto afrom = static_cast<long long>(std::ceil(lo * static_cast<double>(den) - 1e-12));
    const auto ato = static_cast<long long>(std::floor(hi * static_cast<double>(den) + 1e-12));
    for (long long num = afrom; num <= ato; ++num) {
      if (std::gcd(std::abs(num), den) != 1) continue;  // reduced forms only: no duplicates
      out.push_back({num, den});
    }
  }
  return out;
}

}  // namespace detail

// All p/q + (r/s)i with q,s <= max_denominator inside the region, ordered by
// max(q,s) then lexicographically by (re, im).
inline ForbiddenSet gaussian_rationals(long long max_denominator, const BoundingBox& region,
                                       std::size_t max_count = 200000) {
  if (max_denominator < 1) throw EnumerationError("gaussian_rationals: denominator bound >= 1");
  const auto res = detail::rationals_in(region.xmin, region.xmax, max_denominator);
  const auto ims = detail::rationals_in(region.ymin, region.ymax, max_denominator);
  if (res.size() * ims.size() > max_count)
    throw EnumerationError("gaussian_rationals: truncation too large");

  struct Entry {
    long long height;
    double re, im;
  };
  std::vector<Entry> entries;
  entries.reserve(res.size() * ims.size());
  for (const auto& x : res)
    for (const auto& y : ims)
      entries.push_back({std::max(x.den, y.den), x.value(), y.value()});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.height != b.height) return a.height < b.height;
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });

  ForbiddenSet out;
  out.source = ForbiddenSource::gaussian_rational;
  out.values.reserve(entries.size());
  for (const auto& e : entries) out.values.emplace_back(e.re, e.im);
  out.truncation_params["max_denominator"] = static_cast<double>(max_denominator);
  out.truncation_params["region_xmin"] = region.xmin;
  out.truncation_params["region_xmax"] = region.xmax;
  out.truncation_params["region_ymin"] = region.ymin;
  out.truncation_params["region_ymax"] = region.ymax;
  out.claimed_cover_radius = std::numbers::sqrt2 / (2.0 * static_cast<double>(max_denominator));
  return out;
}

// Roots of all integer polynomials with degree <= max_degree and coefficient
// magnitudes <= max_height that lie in the region. Enumerated by height
// (max |coefficient|) then degree then coefficient order; polynomials with a
// common coefficient factor or negative leading coefficient are skipped
// (their roots already appear).
inline ForbiddenSet algebraic_numbers(int max_degree, int max_height, const BoundingBox& region,
                                      std::size_t max_count = 200000) {
  if (max_degree < 1 || max_degree > 4)
    throw EnumerationError("algebraic_numbers: degree bound out of range (1..4)");
  if (max_height < 1 || max_height > 10)
    throw EnumerationError("algebraic_numbers: height bound out of range (1..10)");

  ForbiddenSet out;
  out.source = ForbiddenSource::algebraic;

  // Computed roots of multiplicity >= 2 carry ~sqrt(eps) error, so the same
  // algebraic value reached through different polynomials can differ by
  // ~1e-8; the dedupe radius sits above that. Distinct algebraic numbers at
  // these degree/height bounds are far wider apart in all but adversarial
  // cases.
  constexpr double dedupe_radius = 1e-7;
  constexpr double cell = 1e-6;
  std::map<std::pair<long long, long long>, std::vector<std::size_t>> grid;
  auto cell_of = [&](Complex v) {
    return std::pair{static_cast<long long>(std::llround(v.real() / cell)),
                     static_cast<long long>(std::llround(v.imag() / cell))};
  };
  auto seen = [&](Complex v) {
    const auto [cx, cy] = cell_of(v);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        const auto it = grid.find({cx + dx, cy + dy});
        if (it == grid.end()) continue;
        for (std::size_t i : it->second)
          if (std::abs(v - out.values[i]) <= dedupe_radius) return true;
      }
    return false;
  };
  auto insert = [&](Complex v) {
    grid[cell_of(v)].push_back(out.values.size());
    out.values.push_back(v);
  };

  for (int h = 1; h <= max_height; ++h) {
    for (int deg = 1; deg <= max_degree; ++deg) {
      std::vector<long long> c(static_cast<std::size_t>(deg) + 1, -h);
      c[static_cast<std::size_t>(deg)] = 1;  // leading > 0 by normalization
      while (true) {
        long long maxabs = 0, g = 0;
        for (long long v : c) {
          maxabs = std::max(maxabs, std::llabs(v));
          g = std::gcd(g, std::llabs(v));
        }
        if (maxabs == h && g == 1) {
          std::vector<Complex> coeffs(c.size());
          for (std::size_t k = 0; k < c.size(); ++k)
            coeffs[k] = Complex{static_cast<double>(c[k]), 0.0};
          const auto fact = roots(Polynomial(std::move(coeffs), Polynomial::exact_t{}));
          // Multiple roots of one polynomial scatter numerically; merge them
          // before the global dedupe so the accurate centroid is kept.
          for (const auto& cl : cluster_roots(fact.roots, 1e-6)) {
            const Complex v = cl.value;
            if (!region.contains(v, 1e-9)) continue;
            if (seen(v)) continue;
            insert(v);
            if (out.values.size() > max_count)
              throw EnumerationError("algebraic_numbers: truncation too large");
          }
        }
        // Next coefficient vector: counted in base 2h+1, leading digit > 0.
        std::size_t pos = 0;
        for (; pos < c.size(); ++pos) {
          if (c[pos] < h) {
            ++c[pos];
            break;
          }
          c[pos] = (pos + 1 == c.size()) ? 1 : -h;
        }
        if (pos == c.size()) break;
      }
    }
  }

  out.truncation_params["max_degree"] = max_degree;
  out.truncation_params["max_height"] = max_height;
  out.truncation_params["region_xmin"] = region.xmin;
  out.truncation_params["region_xmax"] = region.xmax;
  out.truncation_params["region_ymin"] = region.ymin;
  out.truncation_params["region_ymax"] = region.ymax;
  return out;
}

// Keeps only values reachable by a function bounded by value_bound; the
// discard radius is recorded so reports can state exactly what was dropped.
inline ForbiddenSet truncate_to_reach(const ForbiddenSet& A, double value_bound,
                                      double slack = 1e-6) {
  if (value_bound < 0.0) throw EnumerationError("truncate_to_reach: bound must be >= 0");
  ForbiddenSet out;
  out.source = A.source;
  out.truncation_params = A.truncation_params;
  out.claimed_cover_radius = A.claimed_cover_radius;
  const double radius = value_bound + slack;
  for (Complex v : A.values)
    if (std::abs(v) <= radius) out.values.push_back(v);
  out.truncation_params["discard_radius"] = radius;
  return out;
}

}  // namespace avoidapprox
