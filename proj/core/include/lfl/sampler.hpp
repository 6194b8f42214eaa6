#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "lfl/gradient_oracle.hpp"
#include "lfl/potential.hpp"
#include "lfl/rng.hpp"
#include "lfl/run_config.hpp"
#include "lfl/vec.hpp"

namespace lfl {

// One chain's dynamic state.  `k` counts completed steps, `t` is the
// elapsed time (bit-identical to schedule.elapsed(k) — both accumulate the
// step sizes left to right), `g` is the running gradient estimate of the
// variance-reduced variant and is present exactly for that variant.
struct ChainState {
  Point x;
  std::uint64_t k = 0;
  double t = 0.0;
  RngStream stream;
  std::optional<Point> g;
  // Component-gradient evaluations spent over the completed steps
  // (variance-reduced runs only; the setup estimate is not counted).
  std::uint64_t evals = 0;
};

struct Trajectory {
  std::vector<ChainState> snapshots;
  // Component-gradient evaluations spent on the running estimate
  // (variance-reduced runs only; n per refresh, 2 per correction).
  std::uint64_t component_evals = 0;
};

// A configured sampling algorithm: potential + variant + schedule, with the
// admissible-step preconditions checked once at construction.  All methods
// are const and thread-safe; chains are pure functions of
// (master_seed, chain_index).
class Sampler {
 public:
  // Variants that need no external oracle: plain and averaged LMC, the
  // variance-reduced variant (the potential must be a FiniteSumPotential),
  // and the smoothed variant (oracle built from config.smoothing_eta).
  Sampler(RunConfig config, std::shared_ptr<const Potential> pot);

  // Stochastic-gradient variant with a caller-supplied oracle.
  Sampler(RunConfig config, std::shared_ptr<const Potential> pot,
          std::shared_ptr<const StochasticGradientOracle> oracle);

  const RunConfig& config() const { return config_; }
  const Potential& potential() const { return *pot_; }
  const StochasticGradientOracle* oracle() const { return oracle_.get(); }

  // Strict admissible-step bound for this variant's declared constants
  // (+infinity when unconstrained).  Construction rejects
  // max step >= this value.
  double step_bound() const { return step_bound_; }

  ChainState initial_state(std::uint32_t chain_index) const;

  // Advance one step with the scheduled step size; returns the number of
  // component-gradient evaluations consumed (0 for non-finite-sum variants).
  std::size_t step(ChainState& state) const;

  // The interpolated point tau into the current step: x - tau grad V(x) +
  // sqrt(2 tau) xi, with xi the very noise block the next full step would
  // use, so tau = h reproduces that step's iterate bit for bit.  Does not
  // advance the chain.
  Point interpolate(const ChainState& state, double tau) const;

  // One draw from the time-averaged law: U ~ Uniform[0, Nh], run
  // floor(U/h) full steps, take the interpolated point the rest of the way.
  Point averaged_draw(std::uint32_t chain_index) const;

  // The U this chain's averaged draw uses (deterministic per chain).
  double averaged_time(std::uint32_t chain_index) const;

  // Same with the averaging time supplied by the caller (tests).
  Point averaged_draw_at(std::uint32_t chain_index, double time) const;

  // Run one chain for config.n_steps steps, snapshotting at the requested
  // (strictly increasing) step indices; index 0 is the initial state.
  Trajectory run(std::uint32_t chain_index,
                 std::span<const std::uint64_t> snapshot_steps) const;

 private:
  void validate();
  void lmc_step(ChainState& state, double h) const;
  void sg_step(ChainState& state, double h) const;
  std::size_t vr_step(ChainState& state, double h) const;

  RunConfig config_;
  std::shared_ptr<const Potential> pot_;
  std::shared_ptr<const StochasticGradientOracle> oracle_;
  const FiniteSumPotential* finite_sum_ = nullptr;
  double step_bound_ = 0.0;
};

}  // namespace lfl
