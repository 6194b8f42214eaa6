#pragma once

#include <functional>

#include "lfl/builtin_potentials.hpp"
#include "lfl/log_density.hpp"

namespace lfl {

struct Divergences {
  double fi = 0.0;  // relative Fisher information E_mu ||s_mu - s_pi||^2
  double kl = 0.0;  // KL(mu || pi)
  double tv = 0.0;  // total variation distance
};

// A 1D density given as x -> (log density, score).  Both callables must be
// strictly positive smooth densities; the caller supplies a domain carrying
// all but a negligible (<= 1e-12) fraction of both masses.
using ScoredDensity = std::function<LogDensityScore(double)>;

// All three divergences by adaptive Simpson quadrature on [lo, hi].  The FI
// and KL integrands are weighted by mu and evaluated in log space; panels
// where mu has decayed below 1e-290 contribute zero (the integrands vanish
// there for the families in scope, and this avoids 0 * inf).
Divergences quad_divergences(const ScoredDensity& mu, const ScoredDensity& pi,
                             double lo, double hi);

// Convenience for the mixture families: domain [min mean - 12, max mean + 12]
// over both mixtures (tail mass beyond is < 1e-30 with unit variances).
Divergences quad_divergences(const GaussianMixture1D& mu,
                             const GaussianMixture1D& pi);

// Scored density of N(mean, var), for quadrature cross-checks against the
// closed-form Gaussian oracles.
ScoredDensity scored_gaussian(double mean, double var);

}  // namespace lfl
