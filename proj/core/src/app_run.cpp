#include "lfl/app/run.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfl/acceptance.hpp"
#include "lfl/app/config.hpp"
#include "lfl/bounds.hpp"
#include "lfl/builtin_potentials.hpp"
#include "lfl/divergences.hpp"
#include "lfl/ensemble.hpp"
#include "lfl/errors.hpp"
#include "lfl/estimators.hpp"
#include "lfl/format.hpp"
#include "lfl/gaussian_chain.hpp"
#include "lfl/sampler.hpp"

namespace lfl::app {
namespace {

// The closed-form Gaussian-chain description of a run, when one exists:
// quadratic potential with positive curvature, Gaussian init, constant
// schedule, and either exact gradients or the linear-noisy oracle (whose
// chain law stays Gaussian).
struct AnalyticContext {
  bool ok = false;
  double lambda = 0.0;
  double bias = 0.0;
  double noise_var = 0.0;
  GaussianLaw init;
};

AnalyticContext analytic_context(const Experiment& ex) {
  AnalyticContext ctx;
  const auto* quad = dynamic_cast<const Quadratic*>(ex.potential.get());
  if (quad == nullptr || !(quad->lambda() > 0.0)) return ctx;
  if (ex.run.init.kind != InitLaw::Kind::kGaussian) return ctx;
  if (!ex.run.schedule.is_constant()) return ctx;
  if (ex.run.n_steps == 0) return ctx;

  if (ex.run.variant == Variant::kSgLmc) {
    const auto* noisy =
        dynamic_cast<const LinearNoisyOracle*>(ex.oracle.get());
    if (noisy == nullptr) return ctx;
    for (std::size_t i = 1; i < noisy->bias().size(); ++i) {
      if (noisy->bias()[i] != 0.0) return ctx;  // law leaves the first axis
    }
    ctx.bias = noisy->bias().empty() ? 0.0 : noisy->bias()[0];
    ctx.noise_var = noisy->noise_var();
  } else if (ex.run.variant != Variant::kLmc &&
             ex.run.variant != Variant::kAveragedLmc) {
    return ctx;
  }

  ctx.ok = true;
  ctx.lambda = quad->lambda();
  ctx.init = GaussianLaw{ex.run.init.mean, ex.run.init.var, ex.run.dim};
  return ctx;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const char* header)
      : out_(path, std::ios::binary) {
    if (!out_) {
      throw ConfigError("cannot open output file '" + path.string() + "'");
    }
    out_ << header << "\n";
  }

  void row(std::uint64_t step, double time, const std::string& estimator,
           double value, double std_error, std::size_t n) {
    out_ << step << ',' << format_double(time) << ',' << estimator << ','
         << format_double(value) << ',' << format_double(std_error) << ','
         << n << "\n";
  }

  void raw(const std::string& line) { out_ << line << "\n"; }

 private:
  std::ofstream out_;
};

void write_estimate_rows(CsvWriter& csv, std::uint64_t step, double time,
                         const EnsembleSnapshot& snap, const Potential& pot) {
  const EstimateCI e2 = empirical_moment(snap, 2);
  const EstimateCI e4 = empirical_moment(snap, 4);
  const EstimateCI eg = grad_second_moment(snap, pot);
  csv.row(step, time, "second_moment", e2.value, e2.std_error, e2.n_samples);
  csv.row(step, time, "fourth_moment", e4.value, e4.std_error, e4.n_samples);
  csv.row(step, time, "grad_second_moment", eg.value, eg.std_error,
          eg.n_samples);
}

void write_bounds_file(const std::filesystem::path& path, const Experiment& ex,
                       const AnalyticContext& ctx) {
  CsvWriter csv(path, BoundReport::csv_header());
  const double k0 = gaussian_kl(ctx.init, ctx.lambda);
  const double d = static_cast<double>(ex.run.dim);
  const double n = static_cast<double>(ex.run.n_steps);
  const double h = ex.run.schedule.h0();

  csv.raw(fi_rate_bound(k0, ctx.lambda, d, n, h).csv_row());
  if (ex.run.variant == Variant::kSgLmc) {
    csv.raw(stochastic_fi_rate_bound(k0, ctx.lambda, d, n,
                                     ctx.bias * ctx.bias, ctx.noise_var * d, h)
                .csv_row());
  }
  // The target N(0, I/lambda) satisfies a Poincare inequality with constant
  // exactly 1/lambda.
  csv.raw(tv_rate_bound(1.0 / ctx.lambda, ctx.lambda, d, k0, n).csv_row());
}

std::uint64_t parse_env_seed(const char* text) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (end == text || *end != '\0' || errno == ERANGE) {
    throw ConfigError(std::string("LFL_SEED: '") + text +
                      "' is not an unsigned 64-bit integer");
  }
  return v;
}

}  // namespace

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    ExperimentConfig cfg = load_config(options.config_path);
    if (const char* env_seed = std::getenv("LFL_SEED")) {
      cfg.seed = parse_env_seed(env_seed);
    }
    const Experiment ex = build_experiment(cfg);
    const AnalyticContext ctx = analytic_context(ex);

    std::optional<Sampler> sampler;
    if (ex.oracle) {
      sampler.emplace(ex.run, ex.potential, ex.oracle);
    } else {
      sampler.emplace(ex.run, ex.potential);
    }

    const std::filesystem::path dir =
        options.out_dir ? std::filesystem::path(*options.out_dir)
                        : std::filesystem::path(ex.output_directory);
    std::filesystem::create_directories(dir);
    const std::filesystem::path estimates_path = dir / "estimates.csv";
    const std::filesystem::path bounds_path = dir / "bounds.csv";

    CsvWriter csv(estimates_path, "step,time,estimator,value,std_error,n");

    if (ex.run.variant == Variant::kAveragedLmc) {
      const AveragedEnsemble draws = averaged_ensemble(*sampler, options.workers);
      EnsembleSnapshot snap;
      snap.step = ex.run.n_steps;
      snap.time = ex.run.schedule.elapsed(ex.run.n_steps);
      snap.n_chains = draws.n_chains;
      snap.dim = draws.dim;
      snap.positions = draws.positions;
      write_estimate_rows(csv, snap.step, snap.time, snap, *ex.potential);
      if (ctx.ok) {
        const EstimateCI fi = averaged_score_fi_estimate(
            draws, ctx.init, ctx.lambda, ex.run.schedule.h0(), ex.run.n_steps);
        csv.row(snap.step, snap.time, "averaged_score_fi", fi.value,
                fi.std_error, fi.n_samples);
        const GaussianTrajectory traj = lmc_gaussian_trajectory(
            ctx.lambda, ex.run.schedule.h0(), ex.run.n_steps, ctx.init);
        csv.row(snap.step, snap.time, "oracle_time_avg_fi", traj.time_avg_fi,
                0.0, 0);
      }
    } else {
      const std::vector<EnsembleSnapshot> snaps =
          ensemble_run(*sampler, ex.snapshot_steps, options.workers);
      GaussianTrajectory traj;
      if (ctx.ok) {
        traj = lmc_gaussian_trajectory(ctx.lambda, ex.run.schedule.h0(),
                                       ex.run.n_steps, ctx.init, ctx.bias,
                                       ctx.noise_var);
      }
      for (const EnsembleSnapshot& snap : snaps) {
        write_estimate_rows(csv, snap.step, snap.time, snap, *ex.potential);
        if (ctx.ok) {
          const GaussianLaw& law = traj.laws[snap.step];
          const EstimateCI fi =
              gaussian_score_fi_estimate(snap, law, ctx.lambda);
          csv.row(snap.step, snap.time, "score_fi", fi.value, fi.std_error,
                  fi.n_samples);
          const double d = static_cast<double>(snap.dim);
          csv.row(snap.step, snap.time, "oracle_second_moment",
                  d * law.var + law.mean * law.mean, 0.0, 0);
          csv.row(snap.step, snap.time, "oracle_fi",
                  gaussian_fi(law, ctx.lambda), 0.0, 0);
          csv.row(snap.step, snap.time, "oracle_kl",
                  gaussian_kl(law, ctx.lambda), 0.0, 0);
        }
      }
    }

    if (ctx.ok) write_bounds_file(bounds_path, ex, ctx);

    out << "wrote " << estimates_path.string() << "\n";
    if (ctx.ok) out << "wrote " << bounds_path.string() << "\n";
    return kExitOk;
  } catch (const DivergenceError& e) {
    err << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const QuadratureError& e) {
    err << "quadrature: " << e.what() << "\n";
    return kExitQuadrature;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_example(const std::vector<double>& m_values, std::ostream& out,
                std::ostream& err) {
  if (m_values.empty()) {
    err << "example: at least one m value is required\n";
    return kExitUsage;
  }
  for (double m : m_values) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      err << "example: m values must be positive (got "
          << format_double(m) << ")\n";
      return kExitUsage;
    }
  }

  const double tv_floor = 1.0 / 800.0;
  out << "m,fi,fi_bound,fi_pass,tv,tv_floor,tv_pass\n";
  for (double m : m_values) {
    Divergences dv;
    try {
      dv = quad_divergences(skewed_bimodal(m), symmetric_bimodal(m));
    } catch (const QuadratureError& e) {
      err << "quadrature: " << e.what() << "\n";
      return kExitQuadrature;
    }
    const double fi_bound = 4.0 * m * m * std::exp(-m * m / 2.0);
    out << format_double(m) << ',' << format_double(dv.fi) << ','
        << format_double(fi_bound) << ',' << (dv.fi <= fi_bound ? '1' : '0')
        << ',' << format_double(dv.tv) << ',' << format_double(tv_floor)
        << ',' << (dv.tv >= tv_floor ? '1' : '0') << "\n";
  }
  return kExitOk;
}

namespace {

// key=value arguments for cmd_bounds, with required/optional lookup and a
// final no-leftovers check so a misspelled key cannot be ignored.
class BoundArgs {
 public:
  explicit BoundArgs(const std::vector<std::string>& assignments) {
    for (const std::string& a : assignments) {
      const auto eq = a.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ConfigError("bounds: expected key=value, got '" + a + "'");
      }
      const std::string key = a.substr(0, eq);
      const std::string value = a.substr(eq + 1);
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(value.c_str(), &end);
      if (value.empty() || end != value.c_str() + value.size() ||
          errno == ERANGE || !std::isfinite(v)) {
        throw ConfigError("bounds: key '" + key + "': '" + value +
                          "' is not a finite number");
      }
      if (!values_.emplace(key, v).second) {
        throw ConfigError("bounds: duplicate key '" + key + "'");
      }
    }
  }

  double need(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      throw ConfigError("bounds: missing required key '" + key + "'");
    }
    const double v = it->second;
    values_.erase(it);
    return v;
  }

  std::optional<double> maybe(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    const double v = it->second;
    values_.erase(it);
    return v;
  }

  void done() const {
    if (!values_.empty()) {
      throw ConfigError("bounds: unknown key '" + values_.begin()->first +
                        "'");
    }
  }

 private:
  std::map<std::string, double> values_;
};

BoundReport plain_report(std::string id,
                         std::vector<std::pair<std::string, double>> inputs,
                         double value, bool scaling_only = false) {
  BoundReport report;
  report.theorem_id = std::move(id);
  report.inputs = std::move(inputs);
  report.value = value;
  report.admissible = true;
  report.scaling_only = scaling_only;
  return report;
}

}  // namespace

int cmd_bounds(const std::string& theorem_id,
               const std::vector<std::string>& assignments, std::ostream& out,
               std::ostream& err) {
  try {
    BoundArgs args(assignments);
    std::vector<BoundReport> reports;

    if (theorem_id == "fi_rate") {
      const double k0 = args.need("k0"), l = args.need("l"),
                   d = args.need("d"), n = args.need("n");
      const auto h = args.maybe("h");
      args.done();
      reports.push_back(fi_rate_bound(k0, l, d, n, h));
    } else if (theorem_id == "fi_rate_decaying") {
      const double k0 = args.need("k0"), l = args.need("l"),
                   d = args.need("d"), n = args.need("n"),
                   h0 = args.need("h0"), alpha = args.need("alpha");
      args.done();
      const double value = decaying_fi_rate_bound(
          k0, l, d, StepSchedule::power_decay(h0, alpha),
          static_cast<std::uint64_t>(n));
      reports.push_back(plain_report("fi_rate_decaying",
                                     {{"k0", k0},
                                      {"l", l},
                                      {"d", d},
                                      {"n", n},
                                      {"h0", h0},
                                      {"alpha", alpha}},
                                     value));
    } else if (theorem_id == "tv_from_fi") {
      const double c_pi = args.need("c_pi"), fi = args.need("fi");
      args.done();
      reports.push_back(plain_report("tv_from_fi",
                                     {{"c_pi", c_pi}, {"fi", fi}},
                                     tv_from_fi_bound(c_pi, fi)));
    } else if (theorem_id == "tv_rate") {
      const double c_pi = args.need("c_pi"), l = args.need("l"),
                   d = args.need("d"), k0 = args.need("k0"),
                   n = args.need("n");
      args.done();
      reports.push_back(tv_rate_bound(c_pi, l, d, k0, n));
    } else if (theorem_id == "fi_rate_hessian") {
      const double k0 = args.need("k0"), l = args.need("l"),
                   hess_l = args.need("hess_l"),
                   grad_growth = args.need("grad_growth"), a = args.need("a"),
                   b = args.need("b"), sigma_init = args.need("sigma_init"),
                   d = args.need("d"), n = args.need("n");
      const auto h = args.maybe("h");
      args.done();
      reports.push_back(hessian_fi_rate_bound(k0, l, hess_l, grad_growth, a,
                                              b, sigma_init, d, n, h));
    } else if (theorem_id == "moment_growth") {
      const double a = args.need("a"), b = args.need("b"),
                   gamma = args.need("gamma"), d = args.need("d"),
                   init2 = args.need("init2"), init4 = args.need("init4"),
                   k = args.need("k"), h = args.need("h");
      args.done();
      const MomentBounds mb = moment_growth_bounds(a, b, gamma, d, init2,
                                                   init4, k, h);
      const std::vector<std::pair<std::string, double>> inputs{
          {"a", a},         {"b", b}, {"gamma", gamma}, {"d", d},
          {"init2", init2}, {"init4", init4}, {"k", k}, {"h", h}};
      reports.push_back(plain_report("moment_second", inputs, mb.second));
      reports.push_back(plain_report("moment_fourth", inputs, mb.fourth));
    } else if (theorem_id == "fi_rate_stochastic") {
      const double k0 = args.need("k0"), l_hat = args.need("l_hat"),
                   d = args.need("d"), n = args.need("n"),
                   delta_b = args.need("delta_b"),
                   delta_v = args.need("delta_v");
      const auto h = args.maybe("h");
      args.done();
      reports.push_back(
          stochastic_fi_rate_bound(k0, l_hat, d, n, delta_b, delta_v, h));
    } else if (theorem_id == "smoothing_params") {
      const double l = args.need("l"), s = args.need("s"), d = args.need("d"),
                   eta = args.need("eta"), batch = args.need("batch");
      args.done();
      const SmoothingParams p =
          smoothing_params(l, s, static_cast<std::size_t>(d), eta,
                           static_cast<std::size_t>(batch));
      const std::vector<std::pair<std::string, double>> inputs{
          {"l", l}, {"s", s}, {"d", d}, {"eta", eta}, {"batch", batch}};
      reports.push_back(plain_report("smoothing_l_hat", inputs, p.l_hat));
      reports.push_back(plain_report("smoothing_delta_v", inputs, p.delta_v));
      reports.push_back(plain_report("smoothing_delta_b", inputs, p.delta_b));
    } else if (theorem_id == "smoothing_eta") {
      const double l = args.need("l"), s = args.need("s"), d = args.need("d"),
                   eps = args.need("eps");
      args.done();
      reports.push_back(plain_report(
          "smoothing_eta", {{"l", l}, {"s", s}, {"d", d}, {"eps", eps}},
          smoothing_eta(l, s, d, eps), /*scaling_only=*/true));
    } else if (theorem_id == "smoothing_complexity") {
      const double c_pi = args.need("c_pi"), k0 = args.need("k0"),
                   l = args.need("l"), s = args.need("s"), d = args.need("d"),
                   eps = args.need("eps");
      args.done();
      const SmoothingComplexity sc =
          smoothing_complexity(c_pi, k0, l, s, d, eps);
      const std::vector<std::pair<std::string, double>> inputs{
          {"c_pi", c_pi}, {"k0", k0}, {"l", l},
          {"s", s},       {"d", d},   {"eps", eps}};
      reports.push_back(
          plain_report("smoothing_batch", inputs, sc.batch, true));
      reports.push_back(
          plain_report("smoothing_n_steps", inputs, sc.n_steps, true));
      reports.push_back(
          plain_report("smoothing_total", inputs, sc.total, true));
    } else if (theorem_id == "fi_rate_vr") {
      const double kl0 = args.need("kl0"), g0_err = args.need("g0_err"),
                   l = args.need("l"), d = args.need("d"),
                   n = args.need("n"), p = args.need("p");
      const auto h = args.maybe("h");
      args.done();
      reports.push_back(vr_fi_rate_bound(kl0, g0_err, l, d, n, p, h));
    } else if (theorem_id == "vr_step_cost") {
      const double p = args.need("p"), n = args.need("n");
      args.done();
      reports.push_back(plain_report("vr_step_cost", {{"p", p}, {"n", n}},
                                     vr_step_cost(p, n)));
    } else {
      err << "bounds: unknown theorem id '" << theorem_id
          << "' (one of fi_rate, fi_rate_decaying, tv_from_fi, tv_rate, "
             "fi_rate_hessian, moment_growth, fi_rate_stochastic, "
             "smoothing_params, smoothing_eta, smoothing_complexity, "
             "fi_rate_vr, vr_step_cost)\n";
      return kExitUsage;
    }

    out << BoundReport::csv_header() << "\n";
    for (const BoundReport& report : reports) out << report.csv_row() << "\n";
    return kExitOk;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_acceptance(const std::string& suite, std::optional<int> criterion,
                   std::ostream& out, std::ostream& err) {
  acceptance::Mode mode;
  if (suite == "fast") {
    mode = acceptance::Mode::kFast;
  } else if (suite == "full") {
    mode = acceptance::Mode::kFull;
  } else {
    err << "acceptance: unknown suite '" << suite << "' (fast or full)\n";
    return kExitUsage;
  }

  if (criterion) {
    if (*criterion < 1 || *criterion > acceptance::criterion_count()) {
      err << "acceptance: criterion index out of range (1.."
          << acceptance::criterion_count() << ")\n";
      return kExitUsage;
    }
    const acceptance::CriterionResult result =
        acceptance::run_criterion(*criterion, mode);
    acceptance::print_result(result, out);
    return result.passed ? kExitOk : kExitAcceptanceFailure;
  }

  const std::vector<acceptance::CriterionResult> results =
      acceptance::run_all(mode, out);
  for (const acceptance::CriterionResult& r : results) {
    if (!r.passed) return kExitAcceptanceFailure;
  }
  return kExitOk;
}

}  // namespace lfl::app
