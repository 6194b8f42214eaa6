#pragma once

#include <cstdint>

namespace lfl {

// Step-size schedule for the discretized dynamics.
//
// Steps are 1-indexed: step(1) is the size of the first step, elapsed(n) is
// the time after n steps (elapsed(0) == 0).  A decaying schedule follows
// h_k = h0 / k^alpha with alpha in (1/2, 1]: alpha > 1/2 keeps the sum of
// squared steps finite while alpha <= 1 keeps the total elapsed time
// divergent, which is exactly the regime in which the decreasing-step
// guarantee is non-vacuous.
//
// elapsed() and sum_squared_steps() are evaluated as one left-to-right pass
// over step(1..n), so repeated calls are bit-identical and consecutive
// prefixes differ by the step size up to the single rounding of the final
// addition (no accumulated re-summation drift).  The class is an immutable
// value; all queries are thread-safe.
class StepSchedule {
 public:
  enum class Kind { kConstant, kPowerDecay };

  struct Prefix {
    double elapsed = 0.0;      // sum of step sizes
    double sum_squared = 0.0;  // sum of squared step sizes
  };

  static StepSchedule constant(double h);
  static StepSchedule power_decay(double h0, double alpha);

  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::kConstant; }
  double h0() const { return h0_; }
  double alpha() const { return alpha_; }

  // Size of step k (k >= 1).
  double step(std::uint64_t k) const;

  // Time elapsed after n steps: sum of step(1..n).
  double elapsed(std::uint64_t n) const { return prefix(n).elapsed; }

  // Sum of squared step sizes over step(1..n).
  double sum_squared_steps(std::uint64_t n) const { return prefix(n).sum_squared; }

  // Both prefix sums in one pass.
  Prefix prefix(std::uint64_t n) const;

  // Largest step in the schedule; admissibility checks bound this.
  double max_step() const { return h0_; }

 private:
  StepSchedule(Kind kind, double h0, double alpha)
      : kind_(kind), h0_(h0), alpha_(alpha) {}

  Kind kind_;
  double h0_;
  double alpha_;  // meaningful for power decay only
};

}  // namespace lfl
