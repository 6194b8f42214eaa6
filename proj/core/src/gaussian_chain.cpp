#include "lfl/gaussian_chain.hpp"

#include <cmath>
#include <string>

#include "lfl/errors.hpp"
#include "lfl/quadrature.hpp"

namespace lfl {

namespace {
void check_pair(const GaussianLaw& mu, double lambda) {
  if (!(mu.var > 0.0)) throw ConfigError("Gaussian law requires var > 0");
  if (!(lambda > 0.0)) throw ConfigError("target curvature lambda must be > 0");
  if (mu.dim == 0) throw ConfigError("Gaussian law requires dim >= 1");
}
}  // namespace

double gaussian_fi(const GaussianLaw& mu, double lambda) {
  check_pair(mu, lambda);
  const double d = static_cast<double>(mu.dim);
  const double shape = lambda * mu.var - 1.0;
  return lambda * lambda * mu.mean * mu.mean + d * shape * shape / mu.var;
}

double gaussian_kl(const GaussianLaw& mu, double lambda) {
  check_pair(mu, lambda);
  const double d = static_cast<double>(mu.dim);
  const double lv = lambda * mu.var;
  return 0.5 * d * (lv - 1.0 - std::log(lv)) +
         0.5 * lambda * mu.mean * mu.mean;
}

GaussianLaw lmc_gaussian_law_at(const GaussianLaw& law_k, double lambda,
                                double tau, double bias, double noise_var) {
  const double shrink = 1.0 - tau * lambda;
  return GaussianLaw{
      shrink * law_k.mean - tau * bias,
      shrink * shrink * law_k.var + tau * tau * noise_var + 2.0 * tau,
      law_k.dim};
}

GaussianTrajectory lmc_gaussian_trajectory(double lambda, double h,
                                           std::uint32_t n_steps,
                                           const GaussianLaw& init,
                                           double bias, double noise_var,
                                           int order) {
  check_pair(init, lambda);
  if (!(h > 0.0)) throw ConfigError("step size must be > 0");
  // The chain law is Gaussian only while lambda plays the role of L, and
  // the guarantee being verified needs its own admissible range.
  if (!(h < 1.0 / (6.0 * lambda))) {
    throw ConfigError("step size " + std::to_string(h) +
                      " outside the open admissible range (0, 1/(6 lambda))");
  }
  if (!(noise_var >= 0.0)) throw ConfigError("oracle noise variance must be >= 0");
  const GaussLegendre& rule =
      order == 64 ? GaussLegendre::order64() : GaussLegendre::order32();
  if (order != 32 && order != 64) {
    throw ConfigError("time-average quadrature order must be 32 or 64");
  }

  GaussianTrajectory traj;
  traj.laws.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.laws.push_back(init);
  double fi_time_integral = 0.0;
  GaussianLaw law = init;
  for (std::uint32_t k = 0; k < n_steps; ++k) {
    fi_time_integral += rule.integrate(
        [&](double tau) {
          return gaussian_fi(lmc_gaussian_law_at(law, lambda, tau, bias, noise_var),
                             lambda);
        },
        0.0, h);
    law = lmc_gaussian_law_at(law, lambda, h, bias, noise_var);
    traj.laws.push_back(law);
  }
  if (n_steps > 0) {
    traj.time_avg_fi = fi_time_integral / (static_cast<double>(n_steps) * h);
  }
  return traj;
}

GradMomentCheck grad_moment_gap(const GaussianLaw& mu, double lambda) {
  check_pair(mu, lambda);
  GradMomentCheck check;
  const double d = static_cast<double>(mu.dim);
  check.grad_sq = lambda * lambda * (d * mu.var + mu.mean * mu.mean);
  check.fi_bound = gaussian_fi(mu, lambda) + 2.0 * d * lambda;
  check.holds = check.grad_sq <= check.fi_bound;
  return check;
}

}  // namespace lfl
