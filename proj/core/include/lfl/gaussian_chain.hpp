#pragma once

#include <cstdint>
#include <vector>

namespace lfl {

// Law of an isotropic Gaussian N(mean * e1, var * I_d): the exact chain law
// when the potential is Quadratic(lambda) and the initial law is of the
// same shape.  The mean sits along a single distinguished axis.
struct GaussianLaw {
  double mean = 0.0;
  double var = 1.0;
  std::size_t dim = 1;
};

// Relative Fisher information FI(mu || pi) for pi = N(0, I/lambda):
// lambda^2 m^2 + d (lambda var - 1)^2 / var.
double gaussian_fi(const GaussianLaw& mu, double lambda);

// KL(mu || pi) for the same pair:
// d/2 (lambda var - 1 - ln(lambda var)) + lambda m^2 / 2.
double gaussian_kl(const GaussianLaw& mu, double lambda);

// Law of the interpolated point tau into a step that leaves law_k, under
// drift lambda x + bias + sqrt(noise_var) * zeta (zeta frozen per step):
// mean (1 - tau lambda) m - tau bias, var (1 - tau lambda)^2 s^2 +
// tau^2 noise_var + 2 tau.
GaussianLaw lmc_gaussian_law_at(const GaussianLaw& law_k, double lambda,
                                double tau, double bias = 0.0,
                                double noise_var = 0.0);

struct GaussianTrajectory {
  std::vector<GaussianLaw> laws;  // laws of x_0 .. x_N
  double time_avg_fi = 0.0;       // (1/(Nh)) int_0^{Nh} FI(mu_t || pi) dt
};

// Exact chain-law trajectory for constant-step LMC on Quadratic(lambda),
// optionally under a constant-bias / Gaussian-noise gradient oracle.  The
// time-averaged FI integrates gaussian_fi over the interpolated laws with a
// fixed Gauss-Legendre rule per step (`order` in {32, 64}; 64 exists to
// cross-validate 32).
GaussianTrajectory lmc_gaussian_trajectory(double lambda, double h,
                                           std::uint32_t n_steps,
                                           const GaussianLaw& init,
                                           double bias = 0.0,
                                           double noise_var = 0.0,
                                           int order = 32);

// Both sides of the gradient-moment inequality
// E_mu ||grad V||^2 <= FI(mu || pi) + 2 d L on the Gaussian chain
// (V = Quadratic(lambda), so L = lambda).  The analytic gap is d / var,
// strictly positive for every lambda, mean, and variance.
struct GradMomentCheck {
  double grad_sq = 0.0;  // lambda^2 (d var + m^2)
  double fi_bound = 0.0; // gaussian_fi + 2 d lambda
  bool holds = false;
};
GradMomentCheck grad_moment_gap(const GaussianLaw& mu, double lambda);

}  // namespace lfl
