#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lfl/builtin_potentials.hpp"
#include "lfl/divergences.hpp"

namespace lfl {

// Density-level diagnostics built on a 1D Gaussian kernel density estimate.
// Everything in this header is a visual/sanity aid: KDE plug-in estimates of
// derivative functionals are biased, so results carry an `approximate` flag
// and are never consulted by acceptance checks.

// Divergence estimates tagged as approximate.
struct ApproxDivergences {
  Divergences values;
  bool approximate = true;
};

// Gaussian KDE with the Silverman rule bandwidth 1.06 std n^{-1/5},
// evaluated on the given grid.  Needs at least 100 samples.
std::vector<double> kde_grid_density(std::span<const double> samples,
                                     std::span<const double> grid);

// FI/KL/TV of a gridded density against an exact reference density, by the
// trapezoid rule on the grid.  The mu-score for FI comes from central
// differences of log mu on the grid (the source of the approximation bias).
ApproxDivergences grid_divergences(std::span<const double> grid,
                                   std::span<const double> mu_density,
                                   const ScoredDensity& pi);

// Exact sampler for a 1D mixture (component choice, then a unit-variance
// Gaussian), so estimator tests can draw from a known non-Gaussian law.
std::vector<double> sample_mixture(const GaussianMixture1D& mix, std::size_t n,
                                   std::uint64_t seed);

}  // namespace lfl
