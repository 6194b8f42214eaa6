#include "lfl/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lfl/errors.hpp"

namespace lfl {

EstimateCI sample_mean(std::span<const double> positions, std::size_t dim,
                       const std::function<double(std::span<const double>)>& f) {
  if (dim == 0 || positions.size() % dim != 0) {
    throw ConfigError("flat position array must be n * dim");
  }
  const std::size_t n = positions.size() / dim;
  if (n == 0) throw ConfigError("estimator needs at least one sample");

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = f(positions.subspan(i * dim, dim));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double sq_dev = 0.0;
  for (double v : values) sq_dev += (v - mean) * (v - mean);

  EstimateCI est;
  est.value = mean;
  // Unbiased CLT standard error; a single sample carries no error bar.
  est.std_error =
      n > 1 ? std::sqrt(sq_dev / static_cast<double>(n - 1) /
                        static_cast<double>(n))
            : 0.0;
  est.n_samples = n;
  return est;
}

EstimateCI empirical_moment(const EnsembleSnapshot& snapshot, int order) {
  if (order != 2 && order != 4) {
    throw ConfigError("moment order must be 2 or 4");
  }
  return sample_mean(snapshot.positions, snapshot.dim,
                     [order](std::span<const double> x) {
                       const double sq = squared_norm(x);
                       return order == 2 ? sq : sq * sq;
                     });
}

EstimateCI score_fi_estimate(std::span<const double> positions, std::size_t dim,
                             const ScoreFn& mu_score, const ScoreFn& pi_score) {
  std::vector<double> s_mu(dim), s_pi(dim);
  std::size_t index = 0;
  return sample_mean(positions, dim, [&](std::span<const double> x) {
    const std::size_t i = index++;
    mu_score(i, x, std::span<double>(s_mu));
    pi_score(i, x, std::span<double>(s_pi));
    return squared_distance(s_mu, s_pi);
  });
}

EstimateCI gaussian_score_fi_estimate(const EnsembleSnapshot& snapshot,
                                      const GaussianLaw& mu, double lambda) {
  if (!(mu.var > 0.0)) throw ConfigError("Gaussian law requires var > 0");
  const auto mu_score = [&](std::size_t, std::span<const double> x,
                            std::span<double> out) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double mean_j = j == 0 ? mu.mean : 0.0;
      out[j] = -(x[j] - mean_j) / mu.var;
    }
  };
  const auto pi_score = [&](std::size_t, std::span<const double> x,
                            std::span<double> out) {
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = -lambda * x[j];
  };
  return score_fi_estimate(snapshot.positions, snapshot.dim, mu_score, pi_score);
}

EstimateCI averaged_score_fi_estimate(const AveragedEnsemble& draws,
                                      const GaussianLaw& init, double lambda,
                                      double h, std::uint32_t n_steps) {
  if (n_steps == 0) throw ConfigError("averaged estimate needs n_steps >= 1");
  // Laws of the iterates x_0 .. x_{N-1}; each draw then interpolates from
  // the iterate its averaging time falls after, mirroring the sampler's
  // index/offset arithmetic exactly.
  std::vector<GaussianLaw> laws(n_steps);
  GaussianLaw law = init;
  law.dim = draws.dim;
  for (std::uint32_t k = 0; k < n_steps; ++k) {
    laws[k] = law;
    law = lmc_gaussian_law_at(law, lambda, h);
  }
  const auto mu_score = [&](std::size_t i, std::span<const double> x,
                            std::span<double> out) {
    const double u = draws.times[i];
    std::uint64_t k = static_cast<std::uint64_t>(u / h);
    if (k > n_steps - 1) k = n_steps - 1;
    double tau = u - static_cast<double>(k) * h;
    tau = std::clamp(tau, 0.0, h);
    const GaussianLaw law_t = lmc_gaussian_law_at(laws[k], lambda, tau);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double mean_j = j == 0 ? law_t.mean : 0.0;
      out[j] = -(x[j] - mean_j) / law_t.var;
    }
  };
  const auto pi_score = [&](std::size_t, std::span<const double> x,
                            std::span<double> out) {
    for (std::size_t j = 0; j < x.size(); ++j) out[j] = -lambda * x[j];
  };
  return score_fi_estimate(draws.positions, draws.dim, mu_score, pi_score);
}

EstimateCI grad_second_moment(const EnsembleSnapshot& snapshot,
                              const Potential& pot) {
  Point g(snapshot.dim);
  return sample_mean(snapshot.positions, snapshot.dim,
                     [&](std::span<const double> x) {
                       pot.gradient(x, std::span<double>(g));
                       return squared_norm(g);
                     });
}

}  // namespace lfl
