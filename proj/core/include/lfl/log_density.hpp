#pragma once

namespace lfl {

// A density evaluation in log space together with its score (d/dx log rho).
// Log space keeps tail quantities meaningful long after the density itself
// would underflow.
struct LogDensityScore {
  double log_density = 0.0;
  double score = 0.0;
};

}  // namespace lfl
