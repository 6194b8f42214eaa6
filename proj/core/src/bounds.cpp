#include "lfl/bounds.hpp"

#include <cmath>
#include <limits>

#include "lfl/errors.hpp"
#include "lfl/format.hpp"

namespace lfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_common(double k0, double d, double n) {
  if (!(k0 >= 0.0)) throw ConfigError("k0 must be >= 0");
  if (!(d >= 1.0)) throw ConfigError("dimension must be >= 1");
  if (!(n >= 1.0)) throw ConfigError("iteration count must be >= 1");
}

bool inside_open_range(double h, double upper) {
  return h > 0.0 && h < upper;
}

// A caller-supplied step must at least be a step; only the upper end of the
// admissible range is a matter for the `admissible` flag.
void check_supplied_step(const std::optional<double>& h) {
  if (h && (!std::isfinite(*h) || !(*h > 0.0))) {
    throw ConfigError("a supplied step size must be positive and finite");
  }
}

}  // namespace

const char* BoundReport::csv_header() {
  return "theorem_id,inputs,value,admissible,scaling_only";
}

std::string BoundReport::csv_row() const {
  std::string row = theorem_id;
  row += ',';
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) row += ';';
    row += inputs[i].first;
    row += '=';
    row += format_double(inputs[i].second);
  }
  row += ',';
  row += format_double(value);
  row += ',';
  row += admissible ? "true" : "false";
  row += ',';
  row += scaling_only ? "true" : "false";
  return row;
}

BoundReport fi_rate_bound(double k0, double l, double d, double n,
                          std::optional<double> h) {
  check_common(k0, d, n);
  if (!(l >= 0.0)) throw ConfigError("l must be >= 0");
  check_supplied_step(h);
  const double range = l > 0.0 ? 1.0 / (6.0 * l) : kInf;

  BoundReport report;
  report.theorem_id = "fi_rate";
  double step;
  if (h) {
    step = *h;
    report.value = 2.0 * k0 / (n * step) + 8.0 * l * l * d * step;
    report.admissible = inside_open_range(step, range);
  } else {
    if (!(l > 0.0)) throw ConfigError("the optimal step needs l > 0");
    step = std::sqrt(k0) / (2.0 * l * std::sqrt(d * n));
    report.value = 8.0 * l * std::sqrt(d * k0) / std::sqrt(n);
    report.admissible = n >= 9.0 * k0 / d && inside_open_range(step, range);
  }
  report.inputs = {{"k0", k0}, {"l", l}, {"d", d}, {"n", n}, {"h", step}};
  return report;
}

double decaying_fi_rate_bound(double k0, double l, double d,
                              const StepSchedule& schedule, std::uint64_t n) {
  check_common(k0, d, static_cast<double>(n));
  if (!(l >= 0.0)) throw ConfigError("l must be >= 0");
  if (schedule.is_constant()) {
    throw ConfigError(
        "the decaying-schedule guarantee needs a summable squared-step "
        "schedule; a constant schedule has sum h_k^2 = infinity");
  }
  const double range = l > 0.0 ? 1.0 / (6.0 * l) : kInf;
  if (!inside_open_range(schedule.max_step(), range)) {
    throw ConfigError("schedule h0 outside the open admissible range");
  }
  const StepSchedule::Prefix p = schedule.prefix(n);
  return (2.0 * k0 + 8.0 * l * l * d * p.sum_squared) / p.elapsed;
}

double tv_from_fi_bound(double c_pi, double fi) {
  if (!(c_pi > 0.0)) throw ConfigError("Poincare constant must be > 0");
  if (!(fi >= 0.0)) throw ConfigError("Fisher information must be >= 0");
  return std::min(1.0, 4.0 * c_pi * fi);
}

BoundReport tv_rate_bound(double c_pi, double l, double d, double k0,
                          double n) {
  if (!(c_pi > 0.0)) throw ConfigError("Poincare constant must be > 0");
  BoundReport inner = fi_rate_bound(k0, l, d, n);
  BoundReport report;
  report.theorem_id = "tv_rate";
  report.value = 32.0 * c_pi * l * std::sqrt(d * k0) / std::sqrt(n);
  report.admissible = inner.admissible;
  report.inputs = {{"c_pi", c_pi}, {"l", l}, {"d", d}, {"k0", k0}, {"n", n}};
  return report;
}

BoundReport hessian_fi_rate_bound(double k0, double l, double hess_l,
                                  double grad_growth, double a, double b,
                                  double sigma_init, double d, double n,
                                  std::optional<double> h) {
  check_common(k0, d, n);
  if (!(l >= 0.0) || !(hess_l >= 0.0) || !(grad_growth >= 0.0) || !(b >= 0.0)) {
    throw ConfigError("smoothness/growth constants must be >= 0");
  }
  check_supplied_step(h);
  // The guarantee is stated only under the normalization a = 1 with an
  // initial scale sigma >= 3; outside it there is no value to report.
  if (a != 1.0) throw ConfigError("the bound is normalized to a = 1");
  if (!(sigma_init >= 3.0)) throw ConfigError("initial scale must be >= 3");
  const double kappa =
      std::max({1.0, l, std::pow(hess_l, 2.0 / 3.0),
                std::cbrt(hess_l) * std::pow(grad_growth, 2.0 / 3.0)});
  double range = 1.0;
  if (l > 0.0) range = std::min(range, 1.0 / l);
  if (grad_growth > 0.0) range = std::min(range, 1.0 / (grad_growth * grad_growth));

  const double scale = b + sigma_init * d;
  BoundReport report;
  report.theorem_id = "fi_rate_hessian";
  report.scaling_only = true;
  double step;
  if (h) {
    step = *h;
    report.value = k0 / (n * step) + kappa * kappa * kappa * d * d * step * step +
                   std::pow(kappa, 6.0) * scale * scale * scale * n *
                       std::pow(step, 5.0);
  } else {
    step = std::cbrt(k0) / (kappa * std::pow(scale, 2.0 / 3.0) * std::cbrt(n));
    report.value = (std::pow(scale, 2.0 / 3.0) * std::pow(k0, 2.0 / 3.0) +
                    std::pow(k0, 5.0 / 3.0) / std::cbrt(scale)) *
                   kappa / std::pow(n, 2.0 / 3.0);
  }
  report.admissible = inside_open_range(step, range);
  report.inputs = {{"k0", k0},
                   {"l", l},
                   {"hess_l", hess_l},
                   {"grad_growth", grad_growth},
                   {"a", a},
                   {"b", b},
                   {"sigma_init", sigma_init},
                   {"d", d},
                   {"n", n},
                   {"h", step},
                   {"kappa", kappa}};
  return report;
}

MomentBounds moment_growth_bounds(double a, double b, double gamma, double d,
                                  double init_second, double init_fourth,
                                  double k, double h) {
  if (!(a > 0.0) || !(b >= 0.0)) throw ConfigError("need a > 0 and b >= 0");
  if (!(gamma > 0.0) || !(gamma <= 2.0)) {
    throw ConfigError("gamma must lie in (0, 2]");
  }
  if (!(d >= 1.0) || !(k >= 0.0) || !(h > 0.0)) {
    throw ConfigError("need d >= 1, k >= 0, h > 0");
  }
  if (!(init_second >= 0.0) || !(init_fourth >= 0.0)) {
    throw ConfigError("initial moments must be >= 0");
  }
  const double drift = a + b + d;
  const double exponent = std::max((2.0 + gamma) / gamma, 2.0);
  MomentBounds bounds;
  bounds.second = init_second + 3.0 * drift * k * h;
  bounds.fourth = init_fourth +
                  6.0 * std::pow(3.0 * drift / std::min(1.0, a), exponent) * k * h;
  return bounds;
}

BoundReport stochastic_fi_rate_bound(double k0, double l_hat, double d,
                                     double n, double delta_b, double delta_v,
                                     std::optional<double> h) {
  check_common(k0, d, n);
  if (!(l_hat >= 0.0)) throw ConfigError("l_hat must be >= 0");
  if (!(delta_b >= 0.0) || !(delta_v >= 0.0)) {
    throw ConfigError("oracle bias/variance bounds must be >= 0");
  }
  check_supplied_step(h);
  const double range = l_hat > 0.0 ? 1.0 / (14.0 * l_hat) : kInf;
  const double floor = 8.0 * (delta_b + delta_v);

  BoundReport report;
  report.theorem_id = "fi_rate_stochastic";
  double step;
  if (h) {
    step = *h;
    report.value = 2.0 * k0 / (n * step) + 16.0 * l_hat * l_hat * d * step + floor;
    report.admissible = inside_open_range(step, range);
  } else {
    if (!(l_hat > 0.0)) throw ConfigError("the optimal step needs l_hat > 0");
    step = std::sqrt(k0) / (l_hat * std::sqrt(8.0 * d * n));
    report.value =
        16.0 * l_hat * std::sqrt(2.0 * d * k0) / std::sqrt(n) + floor;
    report.admissible = n >= 25.0 * k0 / d && inside_open_range(step, range);
  }
  report.inputs = {{"k0", k0},      {"l_hat", l_hat},   {"d", d},
                   {"n", n},        {"delta_b", delta_b}, {"delta_v", delta_v},
                   {"h", step}};
  return report;
}

double smoothing_eta(double l, double s, double d, double eps) {
  if (!(l > 0.0)) throw ConfigError("need l > 0");
  if (!(s > 0.0) || !(s <= 1.0)) throw ConfigError("s must lie in (0, 1]");
  if (!(d >= 1.0)) throw ConfigError("dimension must be >= 1");
  if (!(eps > 0.0) || !(eps <= 1.0)) throw ConfigError("eps must lie in (0, 1]");
  return std::pow(eps, 1.0 / (2.0 * s)) /
         (std::pow(l, 1.0 / s) * std::pow(d, (2.0 + s) / (2.0 * s)));
}

SmoothingComplexity smoothing_complexity(double c_pi, double k0, double l,
                                         double s, double d, double eps) {
  if (!(c_pi > 0.0)) throw ConfigError("Poincare constant must be > 0");
  if (!(k0 >= 0.0)) throw ConfigError("k0 must be >= 0");
  if (!(l > 0.0)) throw ConfigError("need l > 0");
  if (!(s > 0.0) || !(s <= 1.0)) throw ConfigError("s must lie in (0, 1]");
  if (!(d >= 1.0)) throw ConfigError("dimension must be >= 1");
  if (!(eps > 0.0) || !(eps <= 1.0)) throw ConfigError("eps must lie in (0, 1]");

  SmoothingComplexity out;
  const double d_term = std::pow(d, 3.0 - 2.0 * s);
  if (s >= 0.5) {
    out.batch = 1.0;
    out.total = std::pow(c_pi, (1.0 + s) / s) * k0 * std::pow(l, 2.0 / s) *
                d_term / std::pow(eps, (1.0 + s) / s);
  } else {
    out.batch = c_pi * std::pow(l, 2.0 / (1.0 + s)) /
                std::pow(eps, (1.0 - s) / (1.0 + s));
    out.total = c_pi * c_pi * c_pi * k0 * std::pow(l, 6.0 / (1.0 + s)) *
                d_term / std::pow(eps, (5.0 - s) / (1.0 + s));
  }
  out.n_steps = out.total / out.batch;
  return out;
}

BoundReport vr_fi_rate_bound(double kl0, double g0_err, double l, double d,
                             double n, double p, std::optional<double> h) {
  check_common(kl0, d, n);
  if (!(g0_err >= 0.0)) throw ConfigError("g0_err must be >= 0");
  if (!(l >= 0.0)) throw ConfigError("l must be >= 0");
  if (!(p > 0.0) || !(p <= 1.0)) throw ConfigError("p must lie in (0, 1]");
  check_supplied_step(h);
  const double range = l > 0.0 ? std::sqrt(p) / (5.0 * l) : kInf;

  BoundReport report;
  report.theorem_id = "fi_rate_vr";
  double step, constant;
  if (h) {
    step = *h;
    constant = kl0 + 3.0 * step / p * g0_err;
    report.value = 2.0 * constant / (n * step) + 18.0 * l * l * d * step / p;
    report.admissible = inside_open_range(step, range);
  } else {
    if (!(l > 0.0)) throw ConfigError("the optimal step needs l > 0");
    // h* = sqrt(p C)/(3 L sqrt(N d)) with C = kl0 + (3 h*/p) g0_err is
    // self-referential; substituting gives a quadratic in u = sqrt(C) with
    // a single positive root.
    const double q = g0_err / (std::sqrt(p) * l * std::sqrt(n * d));
    const double u = 0.5 * (q + std::sqrt(q * q + 4.0 * kl0));
    constant = u * u;
    step = std::sqrt(p) * u / (3.0 * l * std::sqrt(n * d));
    report.value = 12.0 * l * std::sqrt(constant * d / (n * p));
    report.admissible =
        n >= 2.0 * constant / d && inside_open_range(step, range);
  }
  report.inputs = {{"kl0", kl0}, {"g0_err", g0_err}, {"l", l}, {"d", d},
                   {"n", n},     {"p", p},           {"h", step},
                   {"c", constant}};
  return report;
}

double vr_step_cost(double p, double n) {
  if (!(p > 0.0) || !(p <= 1.0)) throw ConfigError("p must lie in (0, 1]");
  if (!(n >= 1.0)) throw ConfigError("component count must be >= 1");
  return p * n + (1.0 - p) * 2.0;
}

}  // namespace lfl
