#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <set>

#include "avoidapprox/countable_sets.hpp"
#include "test_support.hpp"

using namespace avoidapprox;

namespace {

// Independent lattice oracle: every reduced fraction with denominator <= Q
// per axis, collected with plain loops and exact rational comparison.
std::vector<Complex> brute_gaussian(long long Q, double lo, double hi) {
  std::set<std::pair<long long, long long>> axis;  // reduced (num, den)
  for (long long den = 1; den <= Q; ++den)
    for (long long num = static_cast<long long>(std::ceil(lo * den - 1e-9));
         num <= static_cast<long long>(std::floor(hi * den + 1e-9)); ++num) {
      const long long g = std::gcd(std::llabs(num), den);
      axis.insert({num / g, den / g});
    }
  std::vector<Complex> out;
  for (auto [nx, dx] : axis)
    for (auto [ny, dy] : axis)
      out.emplace_back(static_cast<double>(nx) / static_cast<double>(dx),
                       static_cast<double>(ny) / static_cast<double>(dy));
  return out;
}

bool same_value_multiset(std::vector<Complex> a, std::vector<Complex> b, double tol_eq = 1e-12) {
  if (a.size() != b.size()) return false;
  auto key = [](Complex u, Complex v) {
    if (u.real() != v.real()) return u.real() < v.real();
    return u.imag() < v.imag();
  };
  std::sort(a.begin(), a.end(), key);
  std::sort(b.begin(), b.end(), key);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol_eq) return false;
  return true;
}

}  // namespace

TEST_CASE("explicit sets dedupe and keep order") {
  const auto zero = explicit_set({Complex{}});
  REQUIRE(zero.values.size() == 1);

  const auto pair = explicit_set({Complex{}, Complex{1.0}});
  REQUIRE(pair.values.size() == 2);

  const auto empty = explicit_set({});
  REQUIRE(empty.values.empty());

  const auto dup = explicit_set({Complex{1.0}, Complex{1.0 + 1e-14}, Complex{2.0}});
  REQUIRE(dup.values.size() == 2);
}

TEST_CASE("gaussian rationals match the brute-force lattice oracle") {
  const BoundingBox unit{0.0, 1.0, 0.0, 1.0};

  const auto q1 = gaussian_rationals(1, unit);
  REQUIRE(same_value_multiset(q1.values,
                              {Complex{0, 0}, Complex{0, 1}, Complex{1, 0}, Complex{1, 1}}));

  const auto q2 = gaussian_rationals(2, unit);
  REQUIRE(q2.values.size() == 9);
  REQUIRE(same_value_multiset(q2.values, brute_gaussian(2, 0.0, 1.0)));

  const auto q3 = gaussian_rationals(3, unit);
  REQUIRE(same_value_multiset(q3.values, brute_gaussian(3, 0.0, 1.0)));

  const auto wide = gaussian_rationals(3, {-1.5, 1.5, -0.5, 0.5});
  REQUIRE(same_value_multiset(wide.values, [] {
    std::set<std::pair<long long, long long>> xs, ys;
    for (long long den = 1; den <= 3; ++den) {
      for (long long num = static_cast<long long>(std::ceil(-1.5 * den)); num <= static_cast<long long>(std::floor(1.5 * den)); ++num)
        xs.insert({num / std::gcd(std::llabs(num), den), den / std::gcd(std::llabs(num), den)});
      for (long long num = static_cast<long long>(std::ceil(-0.5 * den)); num <= static_cast<long long>(std::floor(0.5 * den)); ++num)
        ys.insert({num / std::gcd(std::llabs(num), den), den / std::gcd(std::llabs(num), den)});
    }
    std::vector<Complex> out;
    for (auto [nx, dx] : xs)
      for (auto [ny, dy] : ys)
        out.emplace_back(static_cast<double>(nx) / static_cast<double>(dx),
                         static_cast<double>(ny) / static_cast<double>(dy));
    return out;
  }()));
}

TEST_CASE("gaussian rationals are height-ordered and monotone in the bound") {
  const BoundingBox unit{0.0, 1.0, 0.0, 1.0};
  const auto q3 = gaussian_rationals(3, unit);
  // heights nondecreasing
  auto height = [](Complex v) {
    long long best = std::numeric_limits<long long>::max();
    for (long long dx = 1; dx <= 3 && best == std::numeric_limits<long long>::max(); ++dx)
      for (long long dy = 1; dy <= 3; ++dy) {
        const double nx = v.real() * static_cast<double>(dx);
        const double ny = v.imag() * static_cast<double>(dy);
        if (std::abs(nx - std::round(nx)) < 1e-9 && std::abs(ny - std::round(ny)) < 1e-9) {
          best = std::max(dx, dy);
          break;
        }
      }
    return best;
  };
  for (std::size_t i = 0; i + 1 < q3.values.size(); ++i)
    REQUIRE(height(q3.values[i]) <= height(q3.values[i + 1]));

  // monotone: the Q=2 set is a subset of the Q=4 set
  const auto q2 = gaussian_rationals(2, unit);
  const auto q4 = gaussian_rationals(4, unit);
  for (Complex v : q2.values) {
    bool found = false;
    for (Complex w : q4.values)
      if (std::abs(v - w) < 1e-12) {
        found = true;
        break;
      }
    REQUIRE(found);
  }
  REQUIRE(q4.values.size() > q2.values.size());
}

TEST_CASE("gaussian rationals refuse oversized truncations") {
  REQUIRE_THROWS_AS(gaussian_rationals(40, {-50.0, 50.0, -50.0, 50.0}, 10000), EnumerationError);
}

TEST_CASE("algebraic numbers: degree-1 integer roots") {
  const auto A = algebraic_numbers(1, 1, {-2.0, 2.0, -2.0, 2.0});
  REQUIRE(same_value_multiset(A.values, {Complex{-1.0}, Complex{0.0}, Complex{1.0}}, 1e-9));
}

TEST_CASE("algebraic numbers include known quadratic roots") {
  const auto A1 = algebraic_numbers(2, 1, {-2.0, 2.0, -2.0, 2.0});
  bool has_i = false, has_minus_i = false;
  for (Complex v : A1.values) {
    if (std::abs(v - Complex{0.0, 1.0}) < 1e-9) has_i = true;
    if (std::abs(v - Complex{0.0, -1.0}) < 1e-9) has_minus_i = true;
  }
  REQUIRE(has_i);
  REQUIRE(has_minus_i);

  const auto A2 = algebraic_numbers(2, 2, {-2.0, 2.0, -2.0, 2.0});
  bool has_sqrt2 = false;
  for (Complex v : A2.values)
    if (std::abs(v - Complex{std::numbers::sqrt2, 0.0}) < 1e-9) has_sqrt2 = true;
  REQUIRE(has_sqrt2);
}

TEST_CASE("algebraic enumeration matches a closed-form quadratic oracle") {
  const BoundingBox region{-3.0, 3.0, -3.0, 3.0};
  const int H = 3;
  const auto A = algebraic_numbers(2, H, region);

  // oracle: linear and quadratic integer polynomials, closed-form roots
  std::vector<Complex> oracle;
  auto push = [&](Complex v) {
    if (!region.contains(v, 1e-9)) return;
    for (Complex w : oracle)
      if (std::abs(v - w) <= 1e-9) return;
    oracle.push_back(v);
  };
  for (int a = 1; a <= H; ++a)
    for (int b = -H; b <= H; ++b) {
      if (std::max(std::abs(a), std::abs(b)) > H) continue;
      push(Complex{-static_cast<double>(b) / a, 0.0});
    }
  for (int a = 1; a <= H; ++a)
    for (int b = -H; b <= H; ++b)
      for (int c = -H; c <= H; ++c)
        for (Complex r : aatest::quadratic_roots(Complex{static_cast<double>(a)},
                                                 Complex{static_cast<double>(b)},
                                                 Complex{static_cast<double>(c)}))
          push(r);

  REQUIRE(A.values.size() == oracle.size());
  for (Complex v : A.values) {
    bool found = false;
    for (Complex w : oracle)
      if (std::abs(v - w) < 1e-8) {
        found = true;
        break;
      }
    REQUIRE(found);
  }
}

TEST_CASE("algebraic monotonicity in degree and height") {
  const BoundingBox region{-2.5, 2.5, -2.5, 2.5};
  const auto small = algebraic_numbers(1, 2, region);
  const auto big_h = algebraic_numbers(1, 3, region);
  const auto big_d = algebraic_numbers(2, 2, region);
  auto contains_all = [](const ForbiddenSet& sup, const ForbiddenSet& sub) {
    for (Complex v : sub.values) {
      bool found = false;
      for (Complex w : sup.values)
        if (std::abs(v - w) < 1e-9) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };
  REQUIRE(contains_all(big_h, small));
  REQUIRE(contains_all(big_d, small));
}

TEST_CASE("algebraic bounds are enforced") {
  REQUIRE_THROWS_AS(algebraic_numbers(5, 2, {-1, 1, -1, 1}), EnumerationError);
  REQUIRE_THROWS_AS(algebraic_numbers(2, 11, {-1, 1, -1, 1}), EnumerationError);
}

TEST_CASE("truncate_to_reach filters by magnitude and records the radius") {
  const auto A = explicit_set({Complex{}, Complex{100.0}});
  const auto T = truncate_to_reach(A, 5.0);
  REQUIRE(T.values.size() == 1);
  REQUIRE(T.values[0] == Complex{});
  REQUIRE(T.truncation_params.at("discard_radius") >= 5.0);

  REQUIRE(truncate_to_reach(explicit_set({}), 1.0).values.empty());

  const auto G = gaussian_rationals(2, {-3.0, 3.0, -3.0, 3.0});
  const auto GT = truncate_to_reach(G, 1.5);
  for (Complex v : G.values) {
    const bool kept = std::abs(v) <= 1.5 + 1e-6;
    bool present = false;
    for (Complex w : GT.values)
      if (std::abs(v - w) < 1e-12) present = true;
    REQUIRE(present == kept);
  }
}
