#pragma once

#include <functional>
#include <span>

#include "lfl/ensemble.hpp"
#include "lfl/gaussian_chain.hpp"
#include "lfl/potential.hpp"

namespace lfl {

// A Monte Carlo estimate with its CLT standard error; the 3-sigma interval
// [value - 3 se, value + 3 se] is the library-wide statistical tolerance.
struct EstimateCI {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;

  double lo3() const { return value - 3.0 * std_error; }
  double hi3() const { return value + 3.0 * std_error; }
};

// Mean and standard error of a per-sample scalar functional over flat
// row-major positions.
EstimateCI sample_mean(std::span<const double> positions, std::size_t dim,
                       const std::function<double(std::span<const double>)>& f);

// E ||x||^order for order in {2, 4}.
EstimateCI empirical_moment(const EnsembleSnapshot& snapshot, int order);

// Per-sample score evaluation: writes the score of sample `i` at position x
// into `out`.  The index lets time-averaged ensembles dispatch each draw to
// the law it was drawn from.
using ScoreFn =
    std::function<void(std::size_t i, std::span<const double> x, std::span<double> out)>;

// Sample mean of ||s_mu(x_i) - s_pi(x_i)||^2 — the Monte Carlo relative
// Fisher information when x_i ~ mu and the scores are exact.
EstimateCI score_fi_estimate(std::span<const double> positions, std::size_t dim,
                             const ScoreFn& mu_score, const ScoreFn& pi_score);

// FI estimate for a snapshot whose law is a known isotropic Gaussian,
// against pi = N(0, I/lambda).
EstimateCI gaussian_score_fi_estimate(const EnsembleSnapshot& snapshot,
                                      const GaussianLaw& mu, double lambda);

// FI estimate for draws from the time-averaged law of a constant-step chain
// on Quadratic(lambda): each draw's score uses the exact interpolated law at
// its own averaging time.
EstimateCI averaged_score_fi_estimate(const AveragedEnsemble& draws,
                                      const GaussianLaw& init, double lambda,
                                      double h, std::uint32_t n_steps);

// E ||grad V(x)||^2 over a snapshot.
EstimateCI grad_second_moment(const EnsembleSnapshot& snapshot,
                              const Potential& pot);

}  // namespace lfl
