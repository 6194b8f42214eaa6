#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfl/schedule.hpp"

namespace lfl {

// One evaluated theoretical guarantee.  `admissible` records whether every
// precondition of the guarantee holds for these inputs (the value is still
// reported when it does not, so sweeps can show where a regime ends).
// `scaling_only` marks bounds whose absolute constants were fixed to 1
// because the source states them only up to a constant; such values carry
// meaning as scalings, never as absolute numbers.
struct BoundReport {
  std::string theorem_id;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  bool admissible = true;
  bool scaling_only = false;

  static const char* csv_header();  // theorem_id,inputs,value,admissible,scaling_only
  std::string csv_row() const;      // inputs cell is ;-joined key=value pairs
};

// Averaged-FI guarantee for constant-step LMC with exact gradients:
// generic 2 K0/(N h) + 8 L^2 d h on the open step range (0, 1/(6L));
// h omitted means the optimizing step sqrt(K0)/(2 L sqrt(d N)), giving
// 8 L sqrt(d K0)/sqrt(N), admissible when N >= 9 K0/d keeps that step
// strictly inside the range.
BoundReport fi_rate_bound(double k0, double l, double d, double n,
                          std::optional<double> h = std::nullopt);

// Finite-n averaged-FI bound for a decaying schedule:
// (2 K0 + 8 L^2 d S_n) / tau_n, with tau_n the elapsed time and S_n the sum
// of squared steps.  Requires a power-decay schedule (a constant schedule
// has S_n unbounded, which voids the guarantee) with h0 inside (0, 1/(6L)).
double decaying_fi_rate_bound(double k0, double l, double d,
                              const StepSchedule& schedule, std::uint64_t n);

// From a Poincare inequality with constant c_pi: TV^2 <= 4 c_pi FI,
// clipped at 1 (a squared total variation never exceeds 1).
double tv_from_fi_bound(double c_pi, double fi);

// Squared-TV rate for averaged LMC under a Poincare inequality:
// 32 c_pi L sqrt(d K0) / sqrt(N), admissible when N >= 9 K0/d.
BoundReport tv_rate_bound(double c_pi, double l, double d, double k0, double n);

// Averaged-FI rate using second-order (Hessian) smoothness; every hidden
// constant is 1 and the report is flagged scaling_only.  kappa =
// max(1, l, hess_l^{2/3}, hess_l^{1/3} grad_growth^{2/3}).
// generic: k0/(N h) + kappa^3 d^2 h^2 + kappa^6 (b + sigma d)^3 N h^5 on
// 0 < h < min(1/l, 1/grad_growth^2, 1); optimal form
// ((b+sigma d)^{2/3} k0^{2/3} + k0^{5/3}/(b+sigma d)^{1/3}) kappa / N^{2/3}
// at h = k0^{1/3}/(kappa (b+sigma d)^{2/3} N^{1/3}).  Requires the
// normalization a = 1 and sigma_init >= 3.
BoundReport hessian_fi_rate_bound(double k0, double l, double hess_l,
                                  double grad_growth, double a, double b,
                                  double sigma_init, double d, double n,
                                  std::optional<double> h = std::nullopt);

// Moment growth along the chain under dissipativity (a, b, gamma):
// second <= E||x0||^2 + 3 (a+b+d) k h,
// fourth <= E||x0||^4 + 6 (3(a+b+d)/min(1,a))^{max((2+gamma)/gamma, 2)} k h.
// Valid for h <= min(a / (4 m^2), 1), which the caller enforces.
struct MomentBounds {
  double second = 0.0;
  double fourth = 0.0;
};
MomentBounds moment_growth_bounds(double a, double b, double gamma, double d,
                                  double init_second, double init_fourth,
                                  double k, double h);

// Averaged-FI guarantee under a stochastic gradient oracle with declared
// (l_hat, delta_b, delta_v): generic 2 K0/(N h) + 16 l_hat^2 d h +
// 8 (delta_b + delta_v) on (0, 1/(14 l_hat)); h omitted means
// sqrt(K0)/(l_hat sqrt(8 d N)) with value 16 l_hat sqrt(2 d K0)/sqrt(N) +
// 8 (delta_b + delta_v), admissible when N >= 25 K0/d.
BoundReport stochastic_fi_rate_bound(double k0, double l_hat, double d,
                                     double n, double delta_b, double delta_v,
                                     std::optional<double> h = std::nullopt);

// Smoothing radius that makes the smoothed-oracle FI guarantee hit a target
// accuracy eps (absolute constant set to 1; scaling only):
// eta = eps^{1/(2s)} / (l^{1/s} d^{(2+s)/(2s)}).
double smoothing_eta(double l, double s, double d, double eps);

// Batch size / iteration count / total gradient complexity for driving
// squared TV below eps with the smoothed oracle under a Poincare constant
// c_pi.  Proportionality constants 1; scaling only.  The two regimes meet
// continuously at s = 1/2.
struct SmoothingComplexity {
  double batch = 1.0;
  double n_steps = 0.0;
  double total = 0.0;  // batch * n_steps
};
SmoothingComplexity smoothing_complexity(double c_pi, double k0, double l,
                                         double s, double d, double eps);

// Averaged-FI guarantee for the variance-reduced finite-sum variant with
// refresh probability p: the constant is C = kl0 + (3h/p) g0_err; generic
// 2 C/(N h) + 18 L^2 d h / p on (0, sqrt(p)/(5L)); h omitted solves the
// self-consistent optimum h = sqrt(p C)/(3 L sqrt(N d)) (C depends on h;
// the positive root of the induced quadratic in sqrt(C)), giving
// 12 L sqrt(C d/(N p)), admissible when N >= 2 C/d and the step lands
// strictly inside the range.
BoundReport vr_fi_rate_bound(double kl0, double g0_err, double l, double d,
                             double n, double p,
                             std::optional<double> h = std::nullopt);

// Expected component-gradient evaluations per step of the variance-reduced
// variant: p n + (1-p) 2.
double vr_step_cost(double p, double n);

}  // namespace lfl
