#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "avoidapprox/mergelyan.hpp"
#include "test_support.hpp"

using namespace avoidapprox;

TEST_CASE("disc_rescale: identity map shrinks by the accepted xi") {
  const auto K = make_disc_union({{Complex{}, 1.0}}, 256);
  const auto [g, params] = disc_rescale(FunctionEvaluator::identity(), {{Complex{}, 1.0}}, K, 0.1);
  REQUIRE(params.xi_per_component.size() == 1);
  const double xi = params.xi_per_component[0];
  // halving from 1/2 stops at the first xi with xi * max|z| <= 0.1
  REQUIRE(xi <= 0.1 + 1e-12);
  REQUIRE(xi > 0.1 / 4.0);
  // g(z) = (1 - xi) z on the disc
  for (Complex z : {Complex{0.3, 0.2}, Complex{-0.9, 0.0}, Complex{0.0, 1.0}})
    REQUIRE(std::abs(g(z) - (1.0 - xi) * z) < 1e-12);
  double shift = 0.0;
  for (Complex z : K.all_points) shift = std::max(shift, std::abs(g(z) - z));
  REQUIRE(shift <= 0.1);
}

TEST_CASE("disc_rescale: constants are scale-invariant") {
  const auto K = make_disc_union({{Complex{1.0, -1.0}, 0.5}}, 128);
  const auto f = FunctionEvaluator::constant(Complex{3.0, 4.0});
  const auto [g, params] = disc_rescale(f, {{Complex{1.0, -1.0}, 0.5}}, K, 1e-6);
  REQUIRE(params.xi_per_component[0] == Catch::Approx(0.5));  // first candidate already exact
  for (Complex z : K.all_points) REQUIRE(std::abs(g(z) - Complex{3.0, 4.0}) < 1e-14);
}

TEST_CASE("disc_rescale meets the target on exp over two discs") {
  const std::vector<DiscSpec> discs{{Complex{-1.0, 0.0}, 0.9}, {Complex{1.0, 0.0}, 0.9}};
  const auto K = make_disc_union(discs, 512);
  const auto f = FunctionEvaluator::exp_builtin(Complex{1.0}, Complex{1.0}, Complex{3.0}, 2.5);
  const double target = 0.1 / 3.0;
  const auto [g, params] = disc_rescale(f, discs, K, target);
  REQUIRE(params.xi_per_component.size() == 2);
  double shift = 0.0;
  for (Complex z : K.all_points) shift = std::max(shift, std::abs(g(z) - f(z)));
  REQUIRE(shift <= target);
  // dense oracle: also below target well inside the discs
  std::mt19937_64 rng(3);
  for (const auto& d : discs)
    for (Complex z : aatest::random_points_in_disc(rng, 2000, d.center, d.radius))
      REQUIRE(std::abs(g(z) - f(z)) <= target * (1.0 + 1e-9));
}

TEST_CASE("disc_rescale errors when no xi above the floor meets the target") {
  // identity needs xi <= target, so a floor above that cannot be met
  const auto K = make_disc_union({{Complex{}, 1.0}}, 64);
  REQUIRE_THROWS_AS(
      disc_rescale(FunctionEvaluator::identity(), {{Complex{}, 1.0}}, K, 0.01, /*xi_floor=*/0.3),
      RescaleError);
}

TEST_CASE("extend_to_K: disc union with no extra points is the identity") {
  const auto K = make_disc_union({{Complex{}, 1.0}}, 128);
  const auto f = FunctionEvaluator::from_polynomial(Polynomial({Complex{0.5}, Complex{1.0}}));
  const auto g = extend_to_K(f, K);
  for (Complex z : K.all_points) REQUIRE(std::abs(g(z) - f(z)) < 1e-14);
}

TEST_CASE("extend_to_K: attached arc takes nearest closure values") {
  const auto disc = make_disc_union({{Complex{}, 1.0}}, 256);
  const auto arc = make_arc({Complex{1.5, 0.0}, Complex{2.5, 0.0}}, 21);
  const auto K = merge_samples(disc, arc);
  const auto f = FunctionEvaluator::identity();
  const auto g = extend_to_K(f, K);
  // on the disc: unchanged; on the arc: value of the nearest disc sample
  for (Complex z : disc.all_points) REQUIRE(std::abs(g(z) - z) < 1e-12);
  for (Complex z : arc.all_points) {
    const Complex gz = g(z);
    REQUIRE(std::abs(gz) <= 1.0 + 1e-9);  // values come from the disc
    // nearest-neighbour oracle
    double best = std::numeric_limits<double>::infinity();
    Complex bestv{};
    for (Complex w : disc.all_points) {
      const double d = std::abs(z - w);
      if (d < best) {
        best = d;
        bestv = w;
      }
    }
    REQUIRE(std::abs(gz - bestv) < 1e-12);
  }
}

TEST_CASE("extend_to_K: constants extend to themselves") {
  const auto disc = make_disc_union({{Complex{}, 1.0}}, 64);
  const auto arc = make_arc({Complex{1.2, 0.0}, Complex{3.0, 1.0}}, 11);
  const auto K = merge_samples(disc, arc);
  const auto g = extend_to_K(FunctionEvaluator::constant(Complex{2.0, -1.0}), K);
  for (Complex z : K.all_points) REQUIRE(std::abs(g(z) - Complex{2.0, -1.0}) < 1e-14);
}

TEST_CASE("approximate_poly: polynomial passthrough is exact") {
  const auto K = make_disc_union({{Complex{}, 1.0}}, 128);
  const Polynomial p({Complex{1.0}, Complex{}, Complex{1.0}});
  double err = -1.0;
  const Polynomial q =
      approximate_poly(FunctionEvaluator::from_polynomial(p), K, 1e-9, 30, &err);
  REQUIRE(err == 0.0);
  REQUIRE(q.coeffs() == p.coeffs());
}

TEST_CASE("approximate_poly: series truncation with remainder bound") {
  const auto K = make_disc_union({{Complex{}, 0.9}}, 256);
  const auto f = FunctionEvaluator::exp_builtin(Complex{1.0}, Complex{1.0}, Complex{}, 1.0);
  double err = -1.0;
  const Polynomial q = approximate_poly(f, K, 1e-6, 40, &err);
  REQUIRE(err < 1e-6);
  REQUIRE(q.degree() <= 11);  // the 0.9-disc remainder bound admits degree ~10
  REQUIRE(q.degree() >= 8);
  // verified against true exp values
  std::mt19937_64 rng(17);
  for (Complex z : aatest::random_points_in_disc(rng, 1000, Complex{}, 0.9))
    REQUIRE(std::abs(q(z) - std::exp(z)) < 2e-6);
}

TEST_CASE("approximate_poly: least-squares path fits sampled smooth data") {
  const auto K = make_fat_cantor_product(FatCantorKind::S_plus_iS, 0.25, 2, 16);
  std::vector<Complex> vals(K.all_points.size());
  for (std::size_t i = 0; i < K.all_points.size(); ++i) {
    const Complex z = K.all_points[i];
    vals[i] = std::exp(Complex{0.8, 0.2} * z) * 0.25 + Complex{0.1, 0.3};
  }
  const auto f = FunctionEvaluator::from_samples(K.all_points, vals);
  double err = -1.0;
  const Polynomial q = approximate_poly(f, K, 1e-4, 40, &err);
  REQUIRE(err < 1e-4);
  for (std::size_t i = 0; i < K.all_points.size(); ++i)
    REQUIRE(std::abs(q(K.all_points[i]) - vals[i]) < 1e-4);
}

TEST_CASE("approximate_poly: non-analytic data either fits within tol or reports") {
  // data with a conjugate-linear part on a nowhere-dense set: the sweep must
  // either verify the budget or fail with the best error attached
  const auto K = make_fat_cantor_product(FatCantorKind::S_plus_iS, 0.25, 2, 9);
  std::vector<Complex> vals(K.all_points.size());
  for (std::size_t i = 0; i < K.all_points.size(); ++i) {
    const Complex z = K.all_points[i];
    vals[i] = z * z + 0.1 * std::conj(z);
  }
  const auto f = FunctionEvaluator::from_samples(K.all_points, vals);
  try {
    double err = -1.0;
    const Polynomial q = approximate_poly(f, K, 0.05, 40, &err);
    REQUIRE(err < 0.05);
    double recheck = 0.0;
    for (std::size_t i = 0; i < K.all_points.size(); ++i)
      recheck = std::max(recheck, std::abs(q(K.all_points[i]) - vals[i]));
    REQUIRE(recheck < 0.05);
  } catch (const FitError& e) {
    REQUIRE(e.best_error >= 0.05);
    REQUIRE(e.best_degree >= 0);
  }
}

TEST_CASE("approximate_poly explicit failure carries the best achieved error") {
  // random noise cannot be fit at low degree
  const auto K = make_disc_union({{Complex{}, 1.0}}, 128);
  std::vector<Complex> vals(K.all_points.size());
  std::mt19937_64 rng(123);
  std::normal_distribution<double> gdist(0.0, 1.0);
  for (auto& v : vals) v = Complex{gdist(rng), gdist(rng)};
  const auto f = FunctionEvaluator::from_samples(K.all_points, vals);
  REQUIRE_THROWS_AS(approximate_poly(f, K, 1e-3, 6), FitError);
}

TEST_CASE("exp_builtin matches std::exp") {
  const auto f = FunctionEvaluator::exp_builtin(Complex{1.0}, Complex{1.0}, Complex{3.0}, 2.2);
  std::mt19937_64 rng(8);
  for (Complex z : aatest::random_points_in_disc(rng, 500, Complex{}, 2.2))
    REQUIRE(std::abs(f(z) - (std::exp(z) + 3.0)) < 1e-12 * (std::abs(std::exp(z)) + 4.0));
}
