#include "lfl/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lfl/errors.hpp"
#include "lfl/quadrature.hpp"

namespace lfl {

namespace {
// exp(-667.5) ~ 2.6e-290: below this the mu-weighted integrands are dropped.
constexpr double kLogFloor = -667.5;
}  // namespace

Divergences quad_divergences(const ScoredDensity& mu, const ScoredDensity& pi,
                             double lo, double hi) {
  Divergences out;
  out.fi = adaptive_simpson(
      [&](double x) {
        const LogDensityScore m = mu(x);
        if (m.log_density < kLogFloor) return 0.0;
        const double gap = m.score - pi(x).score;
        return gap * gap * std::exp(m.log_density);
      },
      lo, hi);
  out.kl = adaptive_simpson(
      [&](double x) {
        const LogDensityScore m = mu(x);
        if (m.log_density < kLogFloor) return 0.0;
        return std::exp(m.log_density) * (m.log_density - pi(x).log_density);
      },
      lo, hi);
  out.tv = adaptive_simpson(
      [&](double x) {
        return 0.5 * std::abs(std::exp(mu(x).log_density) -
                              std::exp(pi(x).log_density));
      },
      lo, hi);
  return out;
}

Divergences quad_divergences(const GaussianMixture1D& mu,
                             const GaussianMixture1D& pi) {
  const auto [mu_lo, mu_hi] =
      std::minmax_element(mu.means().begin(), mu.means().end());
  const auto [pi_lo, pi_hi] =
      std::minmax_element(pi.means().begin(), pi.means().end());
  const double lo = std::min(*mu_lo, *pi_lo) - 12.0;
  const double hi = std::max(*mu_hi, *pi_hi) + 12.0;
  return quad_divergences(
      [&](double x) { return mu.logdensity_and_score(x); },
      [&](double x) { return pi.logdensity_and_score(x); }, lo, hi);
}

ScoredDensity scored_gaussian(double mean, double var) {
  if (!(var > 0.0)) throw ConfigError("Gaussian density requires var > 0");
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi * var);
  return [mean, var, log_norm](double x) {
    const double z = x - mean;
    return LogDensityScore{log_norm - 0.5 * z * z / var, -z / var};
  };
}

}  // namespace lfl
