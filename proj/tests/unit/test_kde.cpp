#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "lfl/builtin_potentials.hpp"
#include "lfl/divergences.hpp"
#include "lfl/errors.hpp"
#include "lfl/kde.hpp"

using namespace lfl;

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo + static_cast<double>(i) * step;
  }
  return grid;
}

double trapezoid_mass(const std::vector<double>& grid,
                      const std::vector<double>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    acc += 0.5 * (grid[i + 1] - grid[i]) * (f[i] + f[i + 1]);
  }
  return acc;
}

}  // namespace

TEST_CASE("mixture sampling is deterministic with the right mean") {
  const GaussianMixture1D mix = skewed_bimodal(2.0);
  const std::vector<double> a = sample_mixture(mix, 4000, 7);
  const std::vector<double> b = sample_mixture(mix, 4000, 7);
  CHECK(a == b);
  CHECK(sample_mixture(mix, 4000, 8) != a);

  // E x = 0.75 (-2) + 0.25 (2) = -1, sd(x) = 2, so the sample mean lands
  // within ~4 sd(x)/sqrt(n) of -1.
  double mean = 0.0;
  for (double s : a) mean += s;
  mean /= 4000.0;
  CHECK(std::abs(mean - (-1.0)) < 4.0 * 2.0 / std::sqrt(4000.0));
}

TEST_CASE("kde of standard normal draws recovers the density") {
  // symmetric_bimodal(0) collapses to N(0, 1).
  const std::vector<double> samples =
      sample_mixture(symmetric_bimodal(0.0), 5000, 11);
  const std::vector<double> grid = linspace(-6.0, 6.0, 201);
  const std::vector<double> density = kde_grid_density(samples, grid);

  REQUIRE(density.size() == grid.size());
  for (double v : density) CHECK(v >= 0.0);
  CHECK(std::abs(trapezoid_mass(grid, density) - 1.0) < 0.02);
  // Grid point 100 sits at x = 0; the Silverman bandwidth flattens the peak
  // from 0.3989 to about 0.392, well inside the 0.05 tolerance.
  CHECK(std::abs(density[100] - 0.39894) < 0.05);
}

TEST_CASE("kde input validation") {
  const std::vector<double> grid = linspace(-1.0, 1.0, 11);
  const std::vector<double> few(99, 0.5);
  CHECK_THROWS_AS(kde_grid_density(few, grid), ConfigError);

  const std::vector<double> enough = sample_mixture(symmetric_bimodal(0.0), 100, 3);
  const std::vector<double> tiny_grid{0.0};
  CHECK_THROWS_AS(kde_grid_density(enough, tiny_grid), ConfigError);

  // Identical samples have zero variance, hence a degenerate bandwidth.
  const std::vector<double> flat(200, 1.0);
  CHECK_THROWS_AS(kde_grid_density(flat, grid), ConfigError);
}

TEST_CASE("grid divergences of a kde against an exact reference") {
  const GaussianMixture1D mu_mix = skewed_bimodal(2.0);
  const GaussianMixture1D pi_mix = symmetric_bimodal(2.0);
  const std::vector<double> samples = sample_mixture(mu_mix, 20000, 5);
  const std::vector<double> grid = linspace(-10.0, 10.0, 401);
  const std::vector<double> density = kde_grid_density(samples, grid);

  const ScoredDensity pi = [&](double x) { return pi_mix.logdensity_and_score(x); };
  const ApproxDivergences dv = grid_divergences(grid, density, pi);

  CHECK(dv.approximate);
  // Exact values are tv = 0.23862, kl = 0.12166, fi = 0.04281; the KDE
  // bandwidth biases them slightly (tv to ~0.237, fi to ~0.051), so the
  // tolerances here are smoothing bias plus Monte Carlo noise.
  CHECK(std::abs(dv.values.tv - 0.2386249340259104) < 0.03);
  CHECK(std::abs(dv.values.kl - 0.12166046155998175) < 0.05);
  CHECK(dv.values.fi > 0.0);
  CHECK(dv.values.fi < 0.5);
}

TEST_CASE("grid divergences validate their shapes") {
  const ScoredDensity pi = scored_gaussian(0.0, 1.0);
  const std::vector<double> grid = linspace(-1.0, 1.0, 5);
  const std::vector<double> wrong(4, 0.1);
  CHECK_THROWS_AS(grid_divergences(grid, wrong, pi), ConfigError);
  const std::vector<double> two{0.1, 0.1};
  const std::vector<double> grid2 = linspace(-1.0, 1.0, 2);
  CHECK_THROWS_AS(grid_divergences(grid2, two, pi), ConfigError);
}
