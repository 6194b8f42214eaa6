#include "lfl/kde.hpp"

#include <cmath>
#include <numbers>

#include "lfl/errors.hpp"
#include "lfl/rng.hpp"

namespace lfl {

namespace {

double trapezoid(std::span<const double> grid, std::span<const double> f) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    acc += 0.5 * (grid[i + 1] - grid[i]) * (f[i] + f[i + 1]);
  }
  return acc;
}

}  // namespace

std::vector<double> kde_grid_density(std::span<const double> samples,
                                     std::span<const double> grid) {
  if (samples.size() < 100) {
    throw ConfigError("KDE needs at least 100 samples");
  }
  if (grid.size() < 2) throw ConfigError("KDE grid needs at least 2 points");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= n;
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var /= n;
  const double bw = 1.06 * std::sqrt(var) * std::pow(n, -0.2);
  if (!(bw > 0.0)) throw ConfigError("KDE bandwidth degenerate (zero variance)");

  const double norm = 1.0 / (n * bw * std::sqrt(2.0 * std::numbers::pi));
  std::vector<double> density(grid.size(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double acc = 0.0;
    for (double s : samples) {
      const double z = (grid[i] - s) / bw;
      acc += std::exp(-0.5 * z * z);
    }
    density[i] = acc * norm;
  }
  return density;
}

ApproxDivergences grid_divergences(std::span<const double> grid,
                                   std::span<const double> mu_density,
                                   const ScoredDensity& pi) {
  if (grid.size() != mu_density.size() || grid.size() < 3) {
    throw ConfigError("grid and density sizes must match (>= 3 points)");
  }
  const std::size_t n = grid.size();
  std::vector<double> pi_density(n), log_mu(n);
  for (std::size_t i = 0; i < n; ++i) {
    pi_density[i] = std::exp(pi(grid[i]).log_density);
    log_mu[i] = mu_density[i] > 0.0 ? std::log(mu_density[i]) : -1e300;
  }

  std::vector<double> integrand(n);
  // KL: mu log(mu/pi); empty-mu cells contribute nothing.
  for (std::size_t i = 0; i < n; ++i) {
    integrand[i] = mu_density[i] > 0.0
                       ? mu_density[i] * (log_mu[i] - pi(grid[i]).log_density)
                       : 0.0;
  }
  ApproxDivergences out;
  out.values.kl = trapezoid(grid, integrand);

  // FI: (d/dx log mu - s_pi)^2 mu, the log-derivative from grid differences.
  for (std::size_t i = 0; i < n; ++i) {
    if (mu_density[i] <= 0.0) {
      integrand[i] = 0.0;
      continue;
    }
    double slope;
    if (i == 0) {
      slope = (log_mu[1] - log_mu[0]) / (grid[1] - grid[0]);
    } else if (i == n - 1) {
      slope = (log_mu[n - 1] - log_mu[n - 2]) / (grid[n - 1] - grid[n - 2]);
    } else {
      slope = (log_mu[i + 1] - log_mu[i - 1]) / (grid[i + 1] - grid[i - 1]);
    }
    const double gap = slope - pi(grid[i]).score;
    integrand[i] = gap * gap * mu_density[i];
  }
  out.values.fi = trapezoid(grid, integrand);

  for (std::size_t i = 0; i < n; ++i) {
    integrand[i] = 0.5 * std::abs(mu_density[i] - pi_density[i]);
  }
  out.values.tv = trapezoid(grid, integrand);
  return out;
}

std::vector<double> sample_mixture(const GaussianMixture1D& mix, std::size_t n,
                                   std::uint64_t seed) {
  const std::vector<double>& weights = mix.weights();
  const std::vector<double>& means = mix.means();
  std::vector<double> cumulative(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    cumulative[i] = acc;
  }
  cumulative.back() = 1.0;

  std::vector<double> samples(n);
  double z[1];
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform_block(seed, 0, rng_block::make(i, rng_block::kAux), 0);
    std::size_t component = 0;
    while (u >= cumulative[component]) ++component;
    gaussian_block(seed, 0, rng_block::make(i, rng_block::kDrift),
                   std::span<double>(z, 1));
    samples[i] = means[component] + z[0];
  }
  return samples;
}

}  // namespace lfl
