#include "lfl/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lfl/errors.hpp"

namespace lfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string step_message(const char* what, std::uint64_t k) {
  return std::string(what) + " at step " + std::to_string(k);
}

}  // namespace

Sampler::Sampler(RunConfig config, std::shared_ptr<const Potential> pot)
    : config_(std::move(config)), pot_(std::move(pot)) {
  if (!pot_) throw ConfigError("sampler needs a potential");
  if (config_.variant == Variant::kSgLmc) {
    throw ConfigError(
        "the stochastic-gradient variant needs an explicit oracle");
  }
  if (config_.variant == Variant::kGsLmc) {
    if (!config_.smoothing_eta) {
      throw ConfigError("the smoothed variant needs smoothing_eta");
    }
    oracle_ = std::make_shared<SmoothedOracle>(pot_, *config_.smoothing_eta,
                                               config_.smoothing_batch);
  }
  validate();
}

Sampler::Sampler(RunConfig config, std::shared_ptr<const Potential> pot,
                 std::shared_ptr<const StochasticGradientOracle> oracle)
    : config_(std::move(config)), pot_(std::move(pot)), oracle_(std::move(oracle)) {
  if (!pot_) throw ConfigError("sampler needs a potential");
  if (!oracle_) throw ConfigError("oracle constructor given a null oracle");
  if (config_.variant != Variant::kSgLmc && config_.variant != Variant::kGsLmc) {
    throw ConfigError("an external oracle only drives the oracle variants");
  }
  if (oracle_->dimension() != pot_->dimension()) {
    throw ConfigError("oracle dimension must match the potential");
  }
  validate();
}

void Sampler::validate() {
  if (config_.dim == 0 || config_.dim != pot_->dimension()) {
    throw ConfigError("run dimension must match the potential dimension");
  }
  if (config_.n_chains == 0) throw ConfigError("n_chains must be >= 1");
  if (config_.init.kind == InitLaw::Kind::kPoint &&
      config_.init.position.size() != config_.dim) {
    throw ConfigError("point init dimension must match the run dimension");
  }
  if (config_.init.kind == InitLaw::Kind::kGaussian &&
      !(config_.init.var >= 0.0)) {
    throw ConfigError("Gaussian init variance must be >= 0");
  }

  const auto require_lipschitz = [&]() {
    const auto l = pot_->lipschitz_grad();
    if (!l) {
      throw ConfigError(
          "this variant's step-range precondition needs a declared "
          "gradient-Lipschitz constant");
    }
    return *l;
  };

  step_bound_ = kInf;
  switch (config_.variant) {
    case Variant::kLmc:
    case Variant::kAveragedLmc: {
      const double l = require_lipschitz();
      if (l > 0.0) step_bound_ = 1.0 / (6.0 * l);
      break;
    }
    case Variant::kSgLmc:
    case Variant::kGsLmc: {
      const double l_hat = oracle_->l_hat();
      if (l_hat > 0.0) step_bound_ = 1.0 / (14.0 * l_hat);
      break;
    }
    case Variant::kVrLmc: {
      finite_sum_ = dynamic_cast<const FiniteSumPotential*>(pot_.get());
      if (!finite_sum_) {
        throw ConfigError(
            "the variance-reduced variant needs a finite-sum potential");
      }
      if (!config_.vr_refresh_prob) {
        throw ConfigError("the variance-reduced variant needs vr_refresh_prob");
      }
      const double p = *config_.vr_refresh_prob;
      if (!(p > 0.0 && p <= 1.0)) {
        throw ConfigError("refresh probability must lie in (0, 1]");
      }
      const double l = require_lipschitz();
      if (l > 0.0) step_bound_ = std::sqrt(p) / (5.0 * l);
      break;
    }
  }
  // The admissible ranges are open intervals: a max step exactly at the
  // endpoint is rejected along with everything above it.
  if (!(config_.schedule.max_step() < step_bound_)) {
    throw ConfigError("step size " + std::to_string(config_.schedule.max_step()) +
                      " is not inside the open admissible range (0, " +
                      std::to_string(step_bound_) + ") for variant " +
                      variant_name(config_.variant));
  }
  if (config_.variant == Variant::kAveragedLmc) {
    if (!config_.schedule.is_constant()) {
      throw ConfigError("averaged draws are defined for constant schedules");
    }
    if (config_.n_steps == 0) {
      throw ConfigError("averaged draws need a horizon of at least one step");
    }
  }
}

ChainState Sampler::initial_state(std::uint32_t chain_index) const {
  ChainState state;
  state.stream = RngStream{config_.master_seed, chain_index, 0};
  const std::size_t d = config_.dim;
  if (config_.init.kind == InitLaw::Kind::kPoint) {
    state.x = config_.init.position;
  } else {
    state.x.assign(d, 0.0);
    Point xi(d);
    gaussian_block(config_.master_seed, chain_index,
                   rng_block::make(rng_block::kSetupStep, rng_block::kDrift),
                   std::span<double>(xi));
    const double sd = std::sqrt(config_.init.var);
    for (std::size_t i = 0; i < d; ++i) state.x[i] = sd * xi[i];
    state.x[0] += config_.init.mean;
  }
  if (config_.variant == Variant::kVrLmc) {
    // Running estimate starts from a full gradient, so its initial error is
    // exactly zero.
    state.g = pot_->gradient(state.x);
  }
  return state;
}

void Sampler::lmc_step(ChainState& state, double h) const {
  const std::size_t d = state.x.size();
  Point grad(d);
  pot_->gradient(state.x, std::span<double>(grad));
  if (!all_finite(grad)) {
    throw DivergenceError(step_message("non-finite gradient", state.k), state.k);
  }
  Point xi(d);
  gaussian_block(state.stream.master_seed, state.stream.chain_index,
                 rng_block::make(state.k, rng_block::kDrift),
                 std::span<double>(xi));
  const double noise = std::sqrt(2.0 * h);
  for (std::size_t i = 0; i < d; ++i) {
    state.x[i] += -h * grad[i] + noise * xi[i];
  }
}

void Sampler::sg_step(ChainState& state, double h) const {
  const std::size_t d = state.x.size();
  Point grad(d);
  oracle_->query(state.x, state.k, state.stream, std::span<double>(grad));
  if (!all_finite(grad)) {
    throw DivergenceError(step_message("non-finite oracle gradient", state.k),
                          state.k);
  }
  Point xi(d);
  gaussian_block(state.stream.master_seed, state.stream.chain_index,
                 rng_block::make(state.k, rng_block::kDrift),
                 std::span<double>(xi));
  const double noise = std::sqrt(2.0 * h);
  for (std::size_t i = 0; i < d; ++i) {
    state.x[i] += -h * grad[i] + noise * xi[i];
  }
}

std::size_t Sampler::vr_step(ChainState& state, double h) const {
  const std::size_t d = state.x.size();
  const Point& g = *state.g;
  if (!all_finite(g)) {
    throw DivergenceError(step_message("non-finite gradient estimate", state.k),
                          state.k);
  }
  Point x_old = state.x;
  Point xi(d);
  gaussian_block(state.stream.master_seed, state.stream.chain_index,
                 rng_block::make(state.k, rng_block::kDrift),
                 std::span<double>(xi));
  const double noise = std::sqrt(2.0 * h);
  for (std::size_t i = 0; i < d; ++i) {
    state.x[i] += -h * g[i] + noise * xi[i];
  }

  const std::size_t n = finite_sum_->n_components();
  const double refresh = uniform_block(
      state.stream.master_seed, state.stream.chain_index,
      rng_block::make(state.k, rng_block::kAux), 0);
  if (refresh < *config_.vr_refresh_prob) {
    finite_sum_->gradient(state.x, std::span<double>(*state.g));
    return n;
  }
  const double pick = uniform_block(state.stream.master_seed,
                                    state.stream.chain_index,
                                    rng_block::make(state.k, rng_block::kAux), 1);
  const std::size_t i =
      std::min(static_cast<std::size_t>(pick * static_cast<double>(n)), n - 1);
  Point g_new(d), g_old(d);
  finite_sum_->component_gradient(i, state.x, std::span<double>(g_new));
  finite_sum_->component_gradient(i, x_old, std::span<double>(g_old));
  for (std::size_t j = 0; j < d; ++j) {
    (*state.g)[j] += g_new[j] - g_old[j];
  }
  return 2;
}

std::size_t Sampler::step(ChainState& state) const {
  const double h = config_.schedule.step(state.k + 1);
  std::size_t evals = 0;
  switch (config_.variant) {
    case Variant::kLmc:
    case Variant::kAveragedLmc:
      lmc_step(state, h);
      break;
    case Variant::kSgLmc:
    case Variant::kGsLmc:
      sg_step(state, h);
      break;
    case Variant::kVrLmc:
      evals = vr_step(state, h);
      break;
  }
  if (!all_finite(state.x)) {
    throw DivergenceError(step_message("non-finite iterate", state.k + 1),
                          state.k + 1);
  }
  state.k += 1;
  state.t += h;
  state.evals += evals;
  return evals;
}

Point Sampler::interpolate(const ChainState& state, double tau) const {
  const double h = config_.schedule.step(state.k + 1);
  if (!(tau >= 0.0) || !(tau <= h)) {
    throw ConfigError("interpolation offset " + std::to_string(tau) +
                      " outside [0, " + std::to_string(h) + "]");
  }
  const std::size_t d = state.x.size();
  Point grad(d);
  pot_->gradient(state.x, std::span<double>(grad));
  if (!all_finite(grad)) {
    throw DivergenceError(step_message("non-finite gradient", state.k), state.k);
  }
  Point xi(d);
  gaussian_block(state.stream.master_seed, state.stream.chain_index,
                 rng_block::make(state.k, rng_block::kDrift),
                 std::span<double>(xi));
  Point out(d);
  const double noise = std::sqrt(2.0 * tau);
  for (std::size_t i = 0; i < d; ++i) {
    // Same association as the step update, so tau == h is bitwise the next
    // iterate rather than merely equal up to an ulp.
    out[i] = state.x[i] + (-tau * grad[i] + noise * xi[i]);
  }
  return out;
}

Point Sampler::averaged_draw_at(std::uint32_t chain_index, double time) const {
  if (!config_.schedule.is_constant() || config_.n_steps == 0) {
    throw ConfigError("averaged draws need a constant schedule and N >= 1");
  }
  const double h = config_.schedule.h0();
  const std::uint64_t n = config_.n_steps;
  const double horizon = static_cast<double>(n) * h;
  if (!(time >= 0.0) || !(time <= horizon)) {
    throw ConfigError("averaging time outside [0, N h]");
  }
  // time == N h must land in the last step with tau == h exactly; the
  // division below can fall one ulp short of that, so the corner is
  // explicit.
  std::uint64_t k;
  double tau;
  if (time == horizon) {
    k = n - 1;
    tau = h;
  } else {
    k = static_cast<std::uint64_t>(time / h);
    if (k > n - 1) k = n - 1;
    tau = std::clamp(time - static_cast<double>(k) * h, 0.0, h);
  }

  ChainState state = initial_state(chain_index);
  for (std::uint64_t s = 0; s < k; ++s) step(state);
  return interpolate(state, tau);
}

double Sampler::averaged_time(std::uint32_t chain_index) const {
  if (!config_.schedule.is_constant() || config_.n_steps == 0) {
    throw ConfigError("averaged draws need a constant schedule and N >= 1");
  }
  const double u = uniform_block(
      config_.master_seed, chain_index,
      rng_block::make(rng_block::kSetupStep, rng_block::kAux), 0);
  const double horizon =
      static_cast<double>(config_.n_steps) * config_.schedule.h0();
  return u * horizon;
}

Point Sampler::averaged_draw(std::uint32_t chain_index) const {
  return averaged_draw_at(chain_index, averaged_time(chain_index));
}

Trajectory Sampler::run(std::uint32_t chain_index,
                        std::span<const std::uint64_t> snapshot_steps) const {
  for (std::size_t i = 0; i + 1 < snapshot_steps.size(); ++i) {
    if (snapshot_steps[i] >= snapshot_steps[i + 1]) {
      throw ConfigError("snapshot steps must be strictly increasing");
    }
  }
  if (!snapshot_steps.empty() && snapshot_steps.back() > config_.n_steps) {
    throw ConfigError("snapshot step beyond the run horizon");
  }

  Trajectory traj;
  traj.snapshots.reserve(snapshot_steps.size());
  ChainState state = initial_state(chain_index);
  std::size_t next = 0;
  if (next < snapshot_steps.size() && snapshot_steps[next] == 0) {
    traj.snapshots.push_back(state);
    ++next;
  }
  for (std::uint64_t k = 1; k <= config_.n_steps; ++k) {
    traj.component_evals += step(state);
    if (next < snapshot_steps.size() && snapshot_steps[next] == k) {
      traj.snapshots.push_back(state);
      ++next;
    }
  }
  return traj;
}

}  // namespace lfl
