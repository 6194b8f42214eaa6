#pragma once

#include <cstdint>
#include <optional>

#include "lfl/schedule.hpp"
#include "lfl/vec.hpp"

namespace lfl {

// Initial law of a chain: a point mass or an isotropic Gaussian
// N(mean * e1, var * I).  The mean sits on the first axis; together with a
// scalar variance this covers every law the analytic oracles can track.
struct InitLaw {
  enum class Kind { kPoint, kGaussian };

  static InitLaw point(Point x) {
    InitLaw law;
    law.kind = Kind::kPoint;
    law.position = std::move(x);
    return law;
  }

  static InitLaw gaussian(double mean, double var) {
    InitLaw law;
    law.kind = Kind::kGaussian;
    law.mean = mean;
    law.var = var;
    return law;
  }

  Kind kind = Kind::kPoint;
  Point position;     // point init
  double mean = 0.0;  // Gaussian init: mean along the first axis
  double var = 1.0;   // Gaussian init: per-coordinate variance

  double second_moment(std::size_t d) const;
  double fourth_moment(std::size_t d) const;
};

enum class Variant {
  kLmc,         // exact-gradient discretized Langevin
  kSgLmc,       // stochastic-gradient oracle
  kGsLmc,       // Gaussian-smoothed zeroth-order-style oracle
  kVrLmc,       // variance-reduced finite-sum gradient estimator
  kAveragedLmc  // one draw from the time-averaged law
};

const char* variant_name(Variant v);

// Full description of one ensemble run.  Validation of the step range
// against the declared smoothness of the potential/oracle happens when the
// sampler is constructed (see sampler.hpp), because the admissible range
// depends on those declared constants.
struct RunConfig {
  Variant variant = Variant::kLmc;
  StepSchedule schedule = StepSchedule::constant(0.01);
  std::uint32_t n_steps = 0;     // horizon N
  std::uint32_t dim = 1;         // d
  std::uint32_t n_chains = 1;    // ensemble size
  std::uint64_t master_seed = 0; // keyed into every stream
  InitLaw init;

  // Variant-specific parameters.
  std::optional<double> vr_refresh_prob;   // p for the variance-reduced variant
  std::optional<double> smoothing_eta;     // eta for the smoothed variant
  std::uint32_t smoothing_batch = 1;       // B for the smoothed variant
};

}  // namespace lfl
