#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "avoidapprox/compact_set.hpp"
#include "test_support.hpp"

using namespace avoidapprox;

TEST_CASE("single disc: boundary on the circle, mesh is the arc spacing") {
  const auto K = make_disc_union({{Complex{}, 1.0}}, 64);
  REQUIRE(K.boundary_points.size() == 64);
  for (Complex b : K.boundary_points) REQUIRE(std::abs(std::abs(b) - 1.0) < 1e-12);
  REQUIRE(K.mesh == Catch::Approx(std::numbers::pi / 32.0));
  REQUIRE(K.boundary_mesh == Catch::Approx(std::numbers::pi / 32.0));
  REQUIRE(K.component_separation == 0.0);  // fewer than two components
  REQUIRE_FALSE(K.tangency);
  REQUIRE_FALSE(K.interior_points.empty());
  for (Complex z : K.interior_points) REQUIRE(std::abs(z) < 1.0);
  // closed disc: every sample belongs to the closure of the interior
  REQUIRE(K.closure_interior_points.size() == K.all_points.size());
}

TEST_CASE("mesh upper-bounds the covering radius of a disc") {
  const auto K = make_disc_union({{Complex{0.5, -0.25}, 0.8}}, 48);
  std::mt19937_64 rng(11);
  for (Complex z : aatest::random_points_in_disc(rng, 4000, Complex{0.5, -0.25}, 0.8)) {
    double d = std::numeric_limits<double>::infinity();
    for (Complex s : K.all_points) d = std::min(d, std::abs(z - s));
    REQUIRE(d <= K.mesh * (1.0 + 1e-9));
  }
}

TEST_CASE("tangent discs flag; separated discs report the analytic gap") {
  const auto tangent = make_disc_union({{Complex{-1.0, 0.0}, 1.0}, {Complex{1.0, 0.0}, 1.0}}, 32);
  REQUIRE(tangent.tangency);
  REQUIRE(tangent.component_separation == 0.0);

  const auto apart = make_disc_union({{Complex{-1.0, 0.0}, 0.9}, {Complex{1.0, 0.0}, 0.9}}, 32);
  REQUIRE_FALSE(apart.tangency);
  REQUIRE(apart.component_separation == Catch::Approx(0.2).margin(1e-12));

  REQUIRE_THROWS_AS(make_disc_union({{Complex{-0.5, 0.0}, 1.0}, {Complex{0.5, 0.0}, 1.0}}, 32),
                    GeometryError);
}

TEST_CASE("interior points carry the right component id") {
  const auto K = make_disc_union({{Complex{-1.0, 0.0}, 0.9}, {Complex{1.0, 0.0}, 0.9}}, 32);
  for (std::size_t i = 0; i < K.all_points.size(); ++i) {
    const Complex z = K.all_points[i];
    const int comp = K.component[i];
    REQUIRE((comp == 0 || comp == 1));
    const Complex center = comp == 0 ? Complex{-1.0, 0.0} : Complex{1.0, 0.0};
    REQUIRE(std::abs(z - center) <= 0.9 + 1e-12);
  }
}

TEST_CASE("fat Cantor intervals follow the geometric removal schedule") {
  // depth 3 at ratio 1/4 removes 1/4 + 1/8 + 1/16, leaving measure 0.5625
  const auto iv = fat_cantor_intervals(0.25, 3);
  REQUIRE(iv.size() == 8);
  double len = 0.0;
  for (auto [a, b] : iv) len += b - a;
  REQUIRE(len == Catch::Approx(1.0 - 0.25 * (1.0 + 0.5 + 0.25)).epsilon(1e-12));
  REQUIRE(len == Catch::Approx(0.5625).epsilon(1e-12));

  // depth 0 is the full interval
  const auto iv0 = fat_cantor_intervals(0.25, 0);
  REQUIRE(iv0.size() == 1);
  REQUIRE(iv0[0].first == 0.0);
  REQUIRE(iv0[0].second == 1.0);

  // interval bookkeeping oracle: disjoint and ordered
  for (std::size_t i = 0; i + 1 < iv.size(); ++i) REQUIRE(iv[i].second < iv[i + 1].first);
}

TEST_CASE("fat Cantor products: cell counts, area, empty interior") {
  const auto band = make_fat_cantor_product(FatCantorKind::interval_plus_iS, 0.25, 3, 9);
  int band_components = 0;
  for (int c : band.component) band_components = std::max(band_components, c + 1);
  REQUIRE(band_components == 8);
  REQUIRE(band.interior_points.empty());
  REQUIRE(band.closure_interior_points.empty());
  REQUIRE(band.boundary_points.size() == band.all_points.size());

  const auto grid = make_fat_cantor_product(FatCantorKind::S_plus_iS, 0.25, 3, 9);
  int grid_components = 0;
  for (int c : grid.component) grid_components = std::max(grid_components, c + 1);
  REQUIRE(grid_components == 64);

  // product-measure oracle
  const auto iv = fat_cantor_intervals(0.25, 3);
  double len = 0.0;
  for (auto [a, b] : iv) len += b - a;
  double area = 0.0;
  for (auto [a, b] : iv)
    for (auto [c, d] : iv) area += (b - a) * (d - c);
  REQUIRE(area == Catch::Approx(len * len).epsilon(1e-12));
  REQUIRE(area == Catch::Approx(0.5625 * 0.5625).epsilon(1e-12));

  // depth 0: unit square cells
  const auto square = make_fat_cantor_product(FatCantorKind::S_plus_iS, 0.25, 0, 16);
  for (Complex z : square.all_points) {
    REQUIRE(z.real() >= -1e-12);
    REQUIRE(z.real() <= 1.0 + 1e-12);
    REQUIRE(z.imag() >= -1e-12);
    REQUIRE(z.imag() <= 1.0 + 1e-12);
  }
}

TEST_CASE("fat Cantor rejects out-of-range parameters") {
  REQUIRE_THROWS_AS(fat_cantor_intervals(1.2, 2), GeometryError);
  REQUIRE_THROWS_AS(fat_cantor_intervals(0.25, 9), GeometryError);
  // removal heavy enough to consume an interval at some depth
  REQUIRE_THROWS_AS(fat_cantor_intervals(0.9, 6), GeometryError);
}

TEST_CASE("arc sampling is arclength-uniform") {
  const auto seg = make_arc({Complex{}, Complex{1.0}}, 11);
  REQUIRE(seg.all_points.size() == 11);
  for (std::size_t k = 0; k < 11; ++k)
    REQUIRE(std::abs(seg.all_points[k] - Complex{0.1 * static_cast<double>(k), 0.0}) < 1e-12);
  REQUIRE(seg.mesh == Catch::Approx(0.05));
  REQUIRE(seg.interior_points.empty());

  // L-shaped polyline: spacing constant along arclength
  const auto ell = make_arc({Complex{}, Complex{1.0}, Complex{1.0, 2.0}}, 31);
  const double total = 3.0;
  const double spacing = total / 30.0;
  REQUIRE(ell.mesh == Catch::Approx(spacing / 2.0));
  double arc_pos = 0.0;
  for (std::size_t k = 0; k + 1 < ell.all_points.size(); ++k)
    arc_pos += std::abs(ell.all_points[k + 1] - ell.all_points[k]);
  REQUIRE(arc_pos == Catch::Approx(total).epsilon(1e-9));
}

TEST_CASE("self-intersecting arcs are rejected") {
  // figure eight
  REQUIRE_THROWS_AS(
      make_arc({Complex{}, Complex{1.0, 1.0}, Complex{1.0, 0.0}, Complex{0.0, 1.0}}, 16),
      GeometryError);
  // doubling straight back
  REQUIRE_THROWS_AS(make_arc({Complex{}, Complex{1.0}, Complex{0.5, 0.0}}, 16), GeometryError);
}

TEST_CASE("min_distance_to measures against boundary samples") {
  const auto K = make_disc_union({{Complex{}, 1.0}}, 256);
  REQUIRE(min_distance_to(K, Complex{}) == Catch::Approx(1.0).margin(1e-3));
  REQUIRE(min_distance_to(K, Complex{2.0, 0.0}) == Catch::Approx(1.0).margin(1e-3));

  const auto cantor = make_fat_cantor_product(FatCantorKind::interval_plus_iS, 0.25, 2, 9);
  const Complex probe{0.5, 0.5};  // inside the first removed gap
  double brute = std::numeric_limits<double>::infinity();
  for (Complex b : cantor.boundary_points) brute = std::min(brute, std::abs(probe - b));
  REQUIRE(min_distance_to(cantor, probe) == Catch::Approx(brute));
}

TEST_CASE("merge_samples keeps tags and shifts components") {
  const auto disc = make_disc_union({{Complex{}, 1.0}}, 32);
  const auto arc = make_arc({Complex{1.0}, Complex{2.0}}, 8);
  const auto merged = merge_samples(disc, arc);
  REQUIRE(merged.all_points.size() == disc.all_points.size() + arc.all_points.size());
  REQUIRE(merged.closure_interior_points.size() == disc.closure_interior_points.size());
  int maxc = 0;
  for (int c : merged.component) maxc = std::max(maxc, c);
  REQUIRE(maxc == 1);
}
