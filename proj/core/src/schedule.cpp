#include "lfl/schedule.hpp"

#include <cmath>
#include <string>

#include "lfl/errors.hpp"

namespace lfl {

StepSchedule StepSchedule::constant(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw ConfigError("constant schedule requires a finite step size h > 0, got h=" +
                      std::to_string(h));
  }
  return StepSchedule(Kind::kConstant, h, 0.0);
}

StepSchedule StepSchedule::power_decay(double h0, double alpha) {
  if (!(h0 > 0.0) || !std::isfinite(h0)) {
    throw ConfigError("power-decay schedule requires a finite h0 > 0, got h0=" +
                      std::to_string(h0));
  }
  // alpha <= 1/2 makes the squared-step series diverge; alpha > 1 makes the
  // elapsed time converge.  Either way the decaying-schedule guarantee
  // degenerates, so both are rejected up front.
  if (!(alpha > 0.5) || !(alpha <= 1.0)) {
    throw ConfigError(
        "power-decay exponent alpha must lie in (1/2, 1], got alpha=" +
        std::to_string(alpha));
  }
  return StepSchedule(Kind::kPowerDecay, h0, alpha);
}

double StepSchedule::step(std::uint64_t k) const {
  if (kind_ == Kind::kConstant) return h0_;
  return h0_ * std::pow(static_cast<double>(k), -alpha_);
}

StepSchedule::Prefix StepSchedule::prefix(std::uint64_t n) const {
  // Both kinds accumulate left to right — the same operation sequence a
  // running chain performs with t += step(k) — so a chain's elapsed time
  // matches this value bit for bit at every step index.
  Prefix p;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const double h = step(k);
    p.elapsed += h;
    p.sum_squared += h * h;
  }
  return p;
}

}  // namespace lfl
