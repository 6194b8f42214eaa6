#include "lfl/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lfl/app/run.hpp"
#include "lfl/bounds.hpp"
#include "lfl/builtin_potentials.hpp"
#include "lfl/divergences.hpp"
#include "lfl/ensemble.hpp"
#include "lfl/estimators.hpp"
#include "lfl/gaussian_chain.hpp"
#include "lfl/gradient_oracle.hpp"
#include "lfl/sampler.hpp"
#include "lfl/vec.hpp"

namespace lfl::acceptance {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using CriterionFn = Outcome (*)(Mode);

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::size_t fast_or_full(Mode mode, std::size_t fast, std::size_t full) {
  return mode == Mode::kFull ? full : fast;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return MeanSe{mean, std::sqrt(ss / (n - 1.0) / n)};
}

// --- criterion 1: two-mode mixture table ---------------------------------
// For m in {1,2,3,4}: quadrature FI stays below the closed-form ceiling
// 4 m^2 exp(-m^2/2) while quadrature TV stays above 1/800; the m = 3 TV
// also matches the independent closed form erf(m/sqrt(2))/4 to 1e-6.

Outcome mixture_table(Mode) {
  bool passed = true;
  double min_fi_headroom = std::numeric_limits<double>::infinity();
  double min_tv = std::numeric_limits<double>::infinity();
  double tv3 = 0.0;
  for (double m : {1.0, 2.0, 3.0, 4.0}) {
    const Divergences dv =
        quad_divergences(skewed_bimodal(m), symmetric_bimodal(m));
    const double fi_ceiling = 4.0 * m * m * std::exp(-m * m / 2.0);
    passed = passed && dv.fi <= fi_ceiling && dv.tv >= 1.0 / 800.0;
    min_fi_headroom = std::min(min_fi_headroom, fi_ceiling - dv.fi);
    min_tv = std::min(min_tv, dv.tv);
    if (m == 3.0) tv3 = dv.tv;
  }
  const double closed_form = 0.25 * std::erf(3.0 / std::sqrt(2.0));
  const double tv_gap = std::abs(tv3 - closed_form);
  passed = passed && tv_gap <= 1e-6;
  return Outcome{passed, "min FI headroom " + fmt(min_fi_headroom) +
                             " (need >= 0), min TV " + fmt(min_tv) +
                             " (need >= 0.00125), |TV(3) - closed form| = " +
                             fmt(tv_gap) + " (need <= 1e-06)"};
}

// --- criteria 2 and 7 share the analytic Gaussian-chain grid -------------

struct GridPoint {
  double lambda;
  double h;
  std::uint32_t n;
  double var;
  double mean;
};

std::vector<GridPoint> analytic_grid() {
  std::vector<GridPoint> grid;
  for (double lambda : {0.5, 1.0, 2.0}) {
    for (double h : {0.01, 0.02, 0.05}) {
      if (!(h < 1.0 / (6.0 * lambda))) continue;  // admissible steps only
      for (std::uint32_t n : {10u, 100u, 1000u}) {
        for (double var : {0.25, 1.0, 4.0}) {
          for (double mean : {0.0, 1.0, 3.0}) {
            grid.push_back(GridPoint{lambda, h, n, var, mean});
          }
        }
      }
    }
  }
  return grid;
}

// Criterion 2: at every grid point the exact time-averaged FI of the
// interpolated chain law sits strictly below the generic-step rate bound,
// with at least the 1e-9 quadrature tolerance to spare.

Outcome gaussian_chain_rate(Mode) {
  bool passed = true;
  double min_margin = std::numeric_limits<double>::infinity();
  std::string worst;
  std::size_t points = 0;
  for (const GridPoint& g : analytic_grid()) {
    const GaussianLaw init{g.mean, g.var, 1};
    const GaussianTrajectory traj =
        lmc_gaussian_trajectory(g.lambda, g.h, g.n, init);
    const double k0 = gaussian_kl(init, g.lambda);
    const BoundReport report = fi_rate_bound(k0, g.lambda, 1.0,
                                             static_cast<double>(g.n), g.h);
    const double margin = report.value - traj.time_avg_fi;
    passed = passed && report.admissible && margin > 1e-9;
    if (margin < min_margin) {
      min_margin = margin;
      worst = "lambda=" + fmt(g.lambda) + " h=" + fmt(g.h) +
              " N=" + std::to_string(g.n) + " var=" + fmt(g.var) +
              " mean=" + fmt(g.mean);
    }
    ++points;
  }
  return Outcome{passed, "min bound margin " + fmt(min_margin) + " at " +
                             worst + " (need > 1e-09 across " +
                             std::to_string(points) + " grid points)"};
}

// Criterion 7: the gradient-moment inequality holds exactly for every law
// the criterion-2 grid produces (the analytic slack is d/var > 0).

Outcome grad_moment_gap_grid(Mode) {
  bool passed = true;
  double min_slack = std::numeric_limits<double>::infinity();
  std::size_t laws = 0;
  for (const GridPoint& g : analytic_grid()) {
    const GaussianLaw init{g.mean, g.var, 1};
    const GaussianTrajectory traj =
        lmc_gaussian_trajectory(g.lambda, g.h, g.n, init);
    for (const GaussianLaw& law : traj.laws) {
      const GradMomentCheck chk = grad_moment_gap(law, g.lambda);
      passed = passed && chk.holds;
      min_slack = std::min(min_slack, chk.fi_bound - chk.grad_sq);
      ++laws;
    }
  }
  return Outcome{passed, "min slack " + fmt(min_slack) + " over " +
                             std::to_string(laws) +
                             " chain laws (need > 0, exact)"};
}

// --- criterion 3: Monte Carlo averaged draw vs the analytic rate ---------
// Averaged LMC on Quadratic(1), h = 0.05, N = 100, init N(0,4): the
// score-based FI estimate must straddle the exact time-averaged FI within
// 3 standard errors and sit at least 5 standard errors below the rate
// bound.

Outcome averaged_draw_fi(Mode mode) {
  const double lambda = 1.0, h = 0.05;
  const std::uint32_t n_steps = 100;
  const GaussianLaw init{0.0, 4.0, 1};

  RunConfig config;
  config.variant = Variant::kAveragedLmc;
  config.schedule = StepSchedule::constant(h);
  config.n_steps = n_steps;
  config.dim = 1;
  config.n_chains =
      static_cast<std::uint32_t>(fast_or_full(mode, 10000, 100000));
  config.master_seed = 0x61c30001ull;
  config.init = InitLaw::gaussian(init.mean, init.var);

  const Sampler sampler(config, std::make_shared<Quadratic>(lambda, 1));
  const AveragedEnsemble draws = averaged_ensemble(sampler);
  const EstimateCI est =
      averaged_score_fi_estimate(draws, init, lambda, h, n_steps);

  const double analytic =
      lmc_gaussian_trajectory(lambda, h, n_steps, init).time_avg_fi;
  const double bound =
      fi_rate_bound(gaussian_kl(init, lambda), lambda, 1.0,
                    static_cast<double>(n_steps), h)
          .value;

  const double z = (est.value - analytic) / est.std_error;
  const double headroom_se = (bound - est.value) / est.std_error;
  const bool passed = std::abs(z) <= 3.0 && headroom_se >= 5.0;
  return Outcome{passed, "FI " + fmt(est.value) + " +- " +
                             fmt(est.std_error) + " vs analytic " +
                             fmt(analytic) + " (|z| = " + fmt(std::abs(z)) +
                             ", need <= 3); bound " + fmt(bound) + " is " +
                             fmt(headroom_se) + " SE above (need >= 5)"};
}

// --- criterion 4: biased/noisy oracle chain vs its rate bound ------------
// Exact Gaussian chain law under first-axis bias beta and isotropic noise
// v, on the (beta, v) product grid; the time-averaged FI must respect the
// stochastic-oracle bound with delta_b = beta^2 and delta_v = v d.

Outcome biased_oracle_rate(Mode) {
  const double lambda = 1.0, h = 0.05;
  const std::uint32_t n_steps = 100;
  const GaussianLaw init{0.0, 4.0, 1};
  const double k0 = gaussian_kl(init, lambda);

  bool passed = true;
  double min_margin = std::numeric_limits<double>::infinity();
  std::string worst;
  for (double beta : {0.0, 0.1}) {
    for (double v : {0.0, 0.5}) {
      const GaussianTrajectory traj =
          lmc_gaussian_trajectory(lambda, h, n_steps, init, beta, v);
      const BoundReport report = stochastic_fi_rate_bound(
          k0, lambda, 1.0, static_cast<double>(n_steps), beta * beta,
          v * 1.0, h);
      const double margin = report.value - traj.time_avg_fi;
      passed = passed && report.admissible && margin >= 0.0;
      if (margin < min_margin) {
        min_margin = margin;
        worst = "beta=" + fmt(beta) + " v=" + fmt(v);
      }
    }
  }
  return Outcome{passed, "min bound margin " + fmt(min_margin) + " at " +
                             worst + " (need >= 0 on the 2x2 grid)"};
}

// --- criterion 5: variance-reduced estimator ------------------------------
// (a) refresh probability 1 replays plain LMC bit for bit under the shared
// counter blocks; (b) the gradient-estimate variance recursion
// E A <= (1-p)(E B + L^2 E C) holds at every step at 3 standard errors
// (A/B: squared estimate error after/before the step, C: squared step
// displacement); (c) the estimate is unbiased at every step.  On this
// finite sum all component Hessians coincide, so g tracks grad V to
// rounding; the 1e-12 floor on the bias test covers that degenerate
// zero-variance case (the classical interval has width 0 there).

Outcome vr_degeneracy_recursion(Mode mode) {
  auto pot = std::make_shared<FiniteSumQuadratic>(unit_grid_finite_sum(10));
  const double p = 0.1, h = 0.03;
  const std::uint32_t n_steps = 50;

  // (a) p = 1 degeneracy, 64 chains.
  RunConfig base;
  base.schedule = StepSchedule::constant(h);
  base.n_steps = n_steps;
  base.dim = 1;
  base.n_chains = 64;
  base.master_seed = 0x61c50001ull;
  base.init = InitLaw::gaussian(0.0, 1.0);

  RunConfig vr_cfg = base;
  vr_cfg.variant = Variant::kVrLmc;
  vr_cfg.vr_refresh_prob = 1.0;
  RunConfig lmc_cfg = base;
  lmc_cfg.variant = Variant::kLmc;

  const Sampler vr_full(vr_cfg, pot);
  const Sampler lmc(lmc_cfg, pot);
  const std::uint64_t final_step[] = {n_steps};
  bool identical = true;
  for (std::uint32_t chain = 0; chain < base.n_chains; ++chain) {
    const Point xa = vr_full.run(chain, final_step).snapshots[0].x;
    const Point xb = lmc.run(chain, final_step).snapshots[0].x;
    identical = identical && xa.size() == xb.size() &&
                std::memcmp(xa.data(), xb.data(),
                            xa.size() * sizeof(double)) == 0;
  }

  // (b) + (c) at p = 0.1 with per-step snapshots.
  RunConfig cfg = base;
  cfg.variant = Variant::kVrLmc;
  cfg.vr_refresh_prob = p;
  cfg.n_chains = static_cast<std::uint32_t>(fast_or_full(mode, 10000, 100000));
  cfg.master_seed = 0x61c50002ull;
  const Sampler sampler(cfg, pot);

  std::vector<std::uint64_t> steps(n_steps + 1);
  std::iota(steps.begin(), steps.end(), 0);
  const std::vector<EnsembleSnapshot> snaps = ensemble_run(sampler, steps);

  const double l = pot->lipschitz_grad().value();
  const std::size_t n_chains = snaps[0].n_chains;
  const std::size_t dim = snaps[0].dim;

  Point grad_before(dim), grad_after(dim);
  std::vector<double> recursion_stat(n_chains);
  double worst_recursion_z = -std::numeric_limits<double>::infinity();
  bool recursion_ok = true;
  for (std::uint32_t k = 0; k < n_steps; ++k) {
    const EnsembleSnapshot& before = snaps[k];
    const EnsembleSnapshot& after = snaps[k + 1];
    for (std::size_t i = 0; i < n_chains; ++i) {
      pot->gradient(before.chain(i), std::span<double>(grad_before));
      pot->gradient(after.chain(i), std::span<double>(grad_after));
      const double b = squared_distance(before.chain_grad(i),
                                        std::span<const double>(grad_before));
      const double a = squared_distance(after.chain_grad(i),
                                        std::span<const double>(grad_after));
      const double c = squared_distance(after.chain(i), before.chain(i));
      recursion_stat[i] = a - (1.0 - p) * (b + l * l * c);
    }
    const MeanSe ms = mean_se(recursion_stat);
    const double z = ms.mean / ms.se;
    worst_recursion_z = std::max(worst_recursion_z, z);
    recursion_ok = recursion_ok && ms.mean <= 3.0 * ms.se;
  }

  Point grad(dim);
  std::vector<double> bias_stat(n_chains);
  double worst_bias_excess = -std::numeric_limits<double>::infinity();
  bool bias_ok = true;
  for (const EnsembleSnapshot& snap : snaps) {
    for (std::size_t coord = 0; coord < dim; ++coord) {
      for (std::size_t i = 0; i < n_chains; ++i) {
        pot->gradient(snap.chain(i), std::span<double>(grad));
        bias_stat[i] = snap.chain_grad(i)[coord] - grad[coord];
      }
      const MeanSe ms = mean_se(bias_stat);
      worst_bias_excess =
          std::max(worst_bias_excess, std::abs(ms.mean) - 3.0 * ms.se);
      bias_ok = bias_ok && std::abs(ms.mean) <= 3.0 * ms.se + 1e-12;
    }
  }

  const bool passed = identical && recursion_ok && bias_ok;
  return Outcome{passed,
                 std::string("p=1 replays the exact-gradient chain: ") +
                     (identical ? "yes" : "NO") + "; recursion max z " +
                     fmt(worst_recursion_z) +
                     " (need <= 3); bias max(|mean| - 3 SE) " +
                     fmt(worst_bias_excess) + " (need <= 1e-12)"};
}

// --- criterion 6: moment growth along a PseudoHuber chain ----------------
// h = min(a/(4 m^2), 1)/2 = 0.125, point init at the origin, snapshots at
// kh in {0.5, 1, 2}: empirical second/fourth moments stay within 3
// standard errors of the dissipativity bounds.

Outcome moment_growth(Mode mode) {
  const double a = 1.0, b = 1.0, gamma = 1.0, h = 0.125;
  RunConfig config;
  config.variant = Variant::kLmc;
  config.schedule = StepSchedule::constant(h);
  config.n_steps = 16;
  config.dim = 1;
  config.n_chains =
      static_cast<std::uint32_t>(fast_or_full(mode, 10000, 100000));
  config.master_seed = 0x61c60001ull;
  config.init = InitLaw::point(Point{0.0});

  const Sampler sampler(config, std::make_shared<PseudoHuber>(1));
  const std::uint64_t steps[] = {4, 8, 16};
  const std::vector<EnsembleSnapshot> snaps = ensemble_run(sampler, steps);

  bool passed = true;
  double worst_second = -std::numeric_limits<double>::infinity();
  double worst_fourth = -std::numeric_limits<double>::infinity();
  for (const EnsembleSnapshot& snap : snaps) {
    const MomentBounds mb =
        moment_growth_bounds(a, b, gamma, 1.0, 0.0, 0.0,
                             static_cast<double>(snap.step), h);
    const EstimateCI e2 = empirical_moment(snap, 2);
    const EstimateCI e4 = empirical_moment(snap, 4);
    passed = passed && e2.value <= mb.second + 3.0 * e2.std_error &&
             e4.value <= mb.fourth + 3.0 * e4.std_error;
    worst_second = std::max(worst_second, e2.value / mb.second);
    worst_fourth = std::max(worst_fourth, e4.value / mb.fourth);
  }
  return Outcome{passed, "max second-moment usage " + fmt(worst_second) +
                             ", max fourth-moment usage " +
                             fmt(worst_fourth) +
                             " of budget (need <= 1 within 3 SE at kh in "
                             "{0.5, 1, 2})"};
}

// --- criterion 8: decaying-schedule trend ---------------------------------
// h_k = 0.1/k on Quadratic(1) with K0 = 1: the finite-n averaged bound
// must fall monotonically over n in {1e2..1e6} and end below 5% of its
// initial value.  The 1/k schedule only decays the bound like 1/ln(n)
// (elapsed time grows as the harmonic sum while the numerator tends to a
// constant), so the 20x drop is out of reach by an order of magnitude; the
// failure below is the faithful report of that gap.

Outcome decaying_trend(Mode) {
  const StepSchedule schedule = StepSchedule::power_decay(0.1, 1.0);
  const std::uint64_t ns[] = {100, 1000, 10000, 100000, 1000000};
  std::vector<double> values;
  for (std::uint64_t n : ns) {
    values.push_back(decaying_fi_rate_bound(1.0, 1.0, 1.0, schedule, n));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    monotone = monotone && values[i] <= values[i - 1];
  }
  const double ratio = values.back() / values.front();
  const bool ratio_ok = ratio <= 0.05;
  return Outcome{monotone && ratio_ok,
                 "bound " + fmt(values.front()) + " -> " + fmt(values.back()) +
                     " over n = 1e2..1e6, monotone: " +
                     (monotone ? "yes" : "NO") + "; final/initial " +
                     fmt(ratio) + " (need <= 0.05)"};
}

// --- criterion 9: smoothing bias scaling ----------------------------------
// Smoothed oracle on the s = 1/2 power potential, probed at x = 1: the
// measured squared bias must stay below the declared delta_b for eta in
// {0.04, 0.02, 0.01}, and its log-log slope against eta is required to be
// 2s = 1 +- 0.15.  At a point where the potential is smooth the actual
// bias is the second-order Taylor term (slope 4 in eta^2-squared terms),
// so the slope clause fails by construction; the measured slope is
// reported as-is.  The eta^{2s} law itself is validated at matched probe
// points in the unit tests.

Outcome smoothing_bias_scaling(Mode mode) {
  auto pot = std::make_shared<HolderPower>(0.5, 1);
  const std::size_t draws = fast_or_full(mode, 100000, 1000000);
  const double x_probe = 1.0;
  const Point x{x_probe};
  const double true_grad = std::sqrt(x_probe);  // V'(x) = sqrt(x) at x > 0

  const double etas[] = {0.04, 0.02, 0.01};
  std::vector<double> log_eta, log_bias2;
  bool below_delta_b = true;
  std::string bias_list;
  for (std::size_t ei = 0; ei < 3; ++ei) {
    const SmoothedOracle oracle(pot, etas[ei], 1);
    RngStream stream;
    stream.master_seed = 0x61c90001ull;
    stream.chain_index = static_cast<std::uint32_t>(ei);
    Point out(1);
    double sum = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      oracle.query(x, i, stream, std::span<double>(out));
      sum += out[0];
    }
    const double bias = sum / static_cast<double>(draws) - true_grad;
    const double bias2 = std::max(bias * bias, 1e-300);
    below_delta_b = below_delta_b && bias2 <= oracle.delta_b();
    log_eta.push_back(std::log(etas[ei]));
    log_bias2.push_back(std::log(bias2));
    if (!bias_list.empty()) bias_list += ", ";
    bias_list += fmt(bias2);
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    mx += log_eta[i] / 3.0;
    my += log_bias2[i] / 3.0;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sxy += (log_eta[i] - mx) * (log_bias2[i] - my);
    sxx += (log_eta[i] - mx) * (log_eta[i] - mx);
  }
  const double slope = sxy / sxx;
  const bool slope_ok = std::abs(slope - 1.0) <= 0.15;

  return Outcome{below_delta_b && slope_ok,
                 "bias^2 = {" + bias_list + "} all <= delta_b: " +
                     (below_delta_b ? "yes" : "NO") + "; log-log slope " +
                     fmt(slope) + " (need 1 +- 0.15)"};
}

// --- criterion 10: byte determinism of the runner -------------------------

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Outcome run_determinism(Mode) {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "lfl-acceptance-c10";
  fs::remove_all(base);
  fs::create_directories(base);

  const fs::path config_path = base / "run.cfg";
  {
    std::ofstream cfg(config_path, std::ios::binary);
    cfg << "[potential]\nkind = quadratic\nlambda = 1\n"
           "[sampler]\nvariant = lmc\n"
           "[schedule]\nkind = constant\nh = 0.05\n"
           "[run]\nN = 50\nd = 2\nn_chains = 2000\nseed = 20260814\n"
           "snapshot_steps = 0,25,50\n"
           "[init]\nkind = gaussian\nmean = 1\nvar = 4\n";
  }

  std::ostringstream sink;
  app::RunOptions first{config_path.string(), 1, (base / "w1").string()};
  app::RunOptions second{config_path.string(), 8, (base / "w8").string()};
  const int rc1 = app::cmd_run(first, sink, sink);
  const int rc2 = app::cmd_run(second, sink, sink);

  const auto estimates1 = read_file(base / "w1" / "estimates.csv");
  const auto estimates2 = read_file(base / "w8" / "estimates.csv");
  const auto bounds1 = read_file(base / "w1" / "bounds.csv");
  const auto bounds2 = read_file(base / "w8" / "bounds.csv");
  const bool estimates_ok =
      estimates1 && estimates2 && !estimates1->empty() &&
      *estimates1 == *estimates2;
  const bool bounds_ok = bounds1 && bounds2 && *bounds1 == *bounds2;
  fs::remove_all(base);

  const bool passed = rc1 == 0 && rc2 == 0 && estimates_ok && bounds_ok;
  return Outcome{passed,
                 "exit codes " + std::to_string(rc1) + "/" +
                     std::to_string(rc2) + " (need 0/0); workers 1 vs 8: "
                     "estimates.csv " +
                     (estimates_ok ? "identical (" +
                                         std::to_string(estimates1->size()) +
                                         " bytes)"
                                   : "DIFFER") +
                     ", bounds.csv " + (bounds_ok ? "identical" : "DIFFER")};
}

struct Entry {
  const char* name;
  double limit_seconds;  // 0 = no stated limit
  CriterionFn fn;
};

constexpr Entry kCriteria[] = {
    {"mixture-fi-tv-table", 1.0, mixture_table},
    {"gaussian-chain-fi-rate", 5.0, gaussian_chain_rate},
    {"averaged-draw-fi-mc", 60.0, averaged_draw_fi},
    {"biased-oracle-fi-rate", 5.0, biased_oracle_rate},
    {"vr-degeneracy-recursion", 120.0, vr_degeneracy_recursion},
    {"moment-growth-bounds", 60.0, moment_growth},
    {"grad-moment-gap", 0.0, grad_moment_gap_grid},
    {"decaying-schedule-trend", 1.0, decaying_trend},
    {"smoothing-bias-scaling", 60.0, smoothing_bias_scaling},
    {"run-determinism", 30.0, run_determinism},
};

}  // namespace

int criterion_count() {
  return static_cast<int>(std::size(kCriteria));
}

CriterionResult run_criterion(int index, Mode mode) {
  const Entry& entry = kCriteria[index - 1];
  CriterionResult result;
  result.index = index;
  result.name = entry.name;
  result.limit_seconds = entry.limit_seconds;

  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome outcome = entry.fn(mode);
    result.passed = outcome.passed;
    result.detail = outcome.detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (result.limit_seconds > 0.0 && result.seconds > result.limit_seconds) {
    result.passed = false;
    result.detail += "; over the stated time limit";
  }
  return result;
}

void print_result(const CriterionResult& result, std::ostream& out) {
  char head[80];
  std::snprintf(head, sizeof head, "criterion %2d/%d %-24s %s  ",
                result.index, criterion_count(), result.name.c_str(),
                result.passed ? "PASS" : "FAIL");
  out << head << result.detail;
  char tail[64];
  if (result.limit_seconds > 0.0) {
    std::snprintf(tail, sizeof tail, "  [%.2fs, limit %.0fs]", result.seconds,
                  result.limit_seconds);
  } else {
    std::snprintf(tail, sizeof tail, "  [%.2fs]", result.seconds);
  }
  out << tail << "\n" << std::flush;
}

std::vector<CriterionResult> run_all(Mode mode, std::ostream& out) {
  std::vector<CriterionResult> results;
  int passed = 0;
  for (int i = 1; i <= criterion_count(); ++i) {
    results.push_back(run_criterion(i, mode));
    print_result(results.back(), out);
    if (results.back().passed) ++passed;
  }
  out << passed << "/" << criterion_count() << " criteria passed ("
      << (mode == Mode::kFull ? "full" : "fast") << " suite)\n";
  return results;
}

}  // namespace lfl::acceptance
