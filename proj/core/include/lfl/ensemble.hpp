#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lfl/sampler.hpp"

namespace lfl {

// The empirical law at one step: every chain's position (and, for the
// variance-reduced variant, gradient estimate and cumulative evaluation
// count) in flat row-major storage.
struct EnsembleSnapshot {
  std::uint64_t step = 0;
  double time = 0.0;
  std::size_t n_chains = 0;
  std::size_t dim = 0;
  std::vector<double> positions;           // n_chains x dim
  std::vector<double> grad_estimates;      // n_chains x dim, VR only
  std::vector<std::uint64_t> eval_counts;  // cumulative per chain, VR only

  std::span<const double> chain(std::size_t i) const {
    return std::span<const double>(positions).subspan(i * dim, dim);
  }
  std::span<const double> chain_grad(std::size_t i) const {
    return std::span<const double>(grad_estimates).subspan(i * dim, dim);
  }
};

// Draws from the time-averaged law, one per chain, with the averaging time
// each draw used.
struct AveragedEnsemble {
  std::size_t n_chains = 0;
  std::size_t dim = 0;
  std::vector<double> positions;  // n_chains x dim
  std::vector<double> times;      // U_i
};

// Run config.n_chains independent chains, snapshotting at the given
// strictly increasing step indices.  Chains are pure functions of their
// index, and each worker writes disjoint rows of preallocated storage, so
// the result is byte-identical for every worker count.  n_workers = 0 means
// the hardware concurrency.
std::vector<EnsembleSnapshot> ensemble_run(
    const Sampler& sampler, std::span<const std::uint64_t> snapshot_steps,
    unsigned n_workers = 0);

// One averaged draw per chain (the sampler's averaged-draw variant).
AveragedEnsemble averaged_ensemble(const Sampler& sampler,
                                   unsigned n_workers = 0);

}  // namespace lfl
