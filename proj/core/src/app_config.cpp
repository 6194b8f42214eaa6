#include "lfl/app/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "lfl/builtin_potentials.hpp"
#include "lfl/errors.hpp"
#include "lfl/format.hpp"

namespace lfl::app {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void fail(const std::string& msg) {
  throw ConfigError("config: " + msg);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, std::size_t line,
                    const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end != value.c_str() + value.size() || value.empty() || errno == ERANGE ||
      !std::isfinite(v)) {
    fail(line, "key '" + key + "': '" + value + "' is not a finite number");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& value, std::size_t line,
                         const std::string& key) {
  // Plain decimal first (keeps full 64-bit precision for seeds), then the
  // general number path so 1e6-style counts work.
  if (!value.empty() && value.find_first_not_of("0123456789") == std::string::npos) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() + value.size() && errno != ERANGE) return v;
    fail(line, "key '" + key + "': '" + value + "' is out of range");
  }
  const double v = parse_double(value, line, key);
  if (v < 0.0 || v != std::floor(v) || v > 1.8446744073709552e19) {
    fail(line, "key '" + key + "': '" + value + "' is not a nonnegative integer");
  }
  return static_cast<std::uint64_t>(v);
}

std::uint32_t parse_uint32(const std::string& value, std::size_t line,
                           const std::string& key) {
  const std::uint64_t v = parse_uint(value, line, key);
  if (v > 0xffffffffull) {
    fail(line, "key '" + key + "': '" + value + "' exceeds 32-bit range");
  }
  return static_cast<std::uint32_t>(v);
}

std::vector<std::uint64_t> parse_uint_list(const std::string& value,
                                           std::size_t line,
                                           const std::string& key) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_uint(trim(item), line, key));
  }
  if (out.empty()) fail(line, "key '" + key + "': empty list");
  return out;
}

// Tracks which (section, key) pairs appeared, for duplicate and
// applicability checks.
class SeenKeys {
 public:
  void mark(const std::string& section, const std::string& key,
            std::size_t line) {
    if (!seen_.insert(section + "." + key).second) {
      fail(line, "duplicate key '" + key + "' in [" + section + "]");
    }
  }
  bool has(const std::string& section, const std::string& key) const {
    return seen_.count(section + "." + key) > 0;
  }
  void mark_section(const std::string& section) { sections_.insert(section); }
  bool has_section(const std::string& section) const {
    return sections_.count(section) > 0;
  }

  void require(const std::string& section, const std::string& key,
               const std::string& why) const {
    if (!has(section, key)) {
      fail("[" + section + "] " + why + " requires key '" + key + "'");
    }
  }
  void forbid(const std::string& section, const std::string& key,
              const std::string& why) const {
    if (has(section, key)) {
      fail("[" + section + "] key '" + key + "' does not apply to " + why);
    }
  }

 private:
  std::set<std::string> seen_;
  std::set<std::string> sections_;
};

Variant parse_variant(const std::string& value, std::size_t line) {
  for (Variant v : {Variant::kLmc, Variant::kSgLmc, Variant::kGsLmc,
                    Variant::kVrLmc, Variant::kAveragedLmc}) {
    if (value == variant_name(v)) return v;
  }
  fail(line, "unknown variant '" + value +
                 "' (one of lmc, sg_lmc, gs_lmc, vr_lmc, averaged_lmc)");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  SeenKeys seen;
  std::string section;

  std::stringstream lines(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      section = line.substr(1, line.size() - 2);
      if (section != "potential" && section != "sampler" &&
          section != "schedule" && section != "run" && section != "init" &&
          section != "oracle" && section != "output") {
        fail(line_no, "unknown section [" + section + "]");
      }
      seen.mark_section(section);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (section.empty()) fail(line_no, "key '" + key + "' before any section");
    seen.mark(section, key, line_no);

    if (section == "potential") {
      if (key == "kind") cfg.potential_kind = value;
      else if (key == "lambda") cfg.lambda = parse_double(value, line_no, key);
      else if (key == "exponent") cfg.exponent = parse_double(value, line_no, key);
      else if (key == "components") cfg.components = parse_uint(value, line_no, key);
      else fail(line_no, "unknown key '" + key + "' in [potential]");
    } else if (section == "sampler") {
      if (key == "variant") cfg.variant = parse_variant(value, line_no);
      else if (key == "refresh_prob") cfg.refresh_prob = parse_double(value, line_no, key);
      else if (key == "eta") cfg.eta = parse_double(value, line_no, key);
      else if (key == "batch") cfg.batch = parse_uint(value, line_no, key);
      else fail(line_no, "unknown key '" + key + "' in [sampler]");
    } else if (section == "schedule") {
      if (key == "kind") {
        if (value == "constant") cfg.schedule_kind = StepSchedule::Kind::kConstant;
        else if (value == "power_decay") cfg.schedule_kind = StepSchedule::Kind::kPowerDecay;
        else fail(line_no, "unknown schedule kind '" + value + "'");
      } else if (key == "h") cfg.h = parse_double(value, line_no, key);
      else if (key == "h0") cfg.h0 = parse_double(value, line_no, key);
      else if (key == "alpha") cfg.alpha = parse_double(value, line_no, key);
      else fail(line_no, "unknown key '" + key + "' in [schedule]");
    } else if (section == "run") {
      if (key == "N") cfg.n_steps = parse_uint32(value, line_no, key);
      else if (key == "d") cfg.dim = parse_uint32(value, line_no, key);
      else if (key == "n_chains") cfg.n_chains = parse_uint32(value, line_no, key);
      else if (key == "seed") cfg.seed = parse_uint(value, line_no, key);
      else if (key == "snapshot_steps") cfg.snapshot_steps = parse_uint_list(value, line_no, key);
      else fail(line_no, "unknown key '" + key + "' in [run]");
    } else if (section == "init") {
      if (key == "kind") {
        if (value == "point") cfg.init_kind = InitLaw::Kind::kPoint;
        else if (value == "gaussian") cfg.init_kind = InitLaw::Kind::kGaussian;
        else fail(line_no, "unknown init kind '" + value + "'");
      } else if (key == "value") cfg.init_value = parse_double(value, line_no, key);
      else if (key == "mean") cfg.init_mean = parse_double(value, line_no, key);
      else if (key == "var") cfg.init_var = parse_double(value, line_no, key);
      else fail(line_no, "unknown key '" + key + "' in [init]");
    } else if (section == "oracle") {
      if (key == "bias") cfg.oracle_bias = parse_double(value, line_no, key);
      else if (key == "variance") cfg.oracle_variance = parse_double(value, line_no, key);
      else fail(line_no, "unknown key '" + key + "' in [oracle]");
    } else {  // output
      if (key == "directory") cfg.output_directory = value;
      else fail(line_no, "unknown key '" + key + "' in [output]");
    }
  }

  // Required sections and keys.
  for (const char* s : {"potential", "sampler", "schedule", "run", "init"}) {
    if (!seen.has_section(s)) fail(std::string("missing [") + s + "] section");
  }
  seen.require("potential", "kind", "every config");
  seen.require("sampler", "variant", "every config");
  seen.require("schedule", "kind", "every config");
  seen.require("run", "N", "every config");
  seen.require("run", "d", "every config");
  seen.require("run", "n_chains", "every config");
  seen.require("run", "seed", "every config");
  seen.require("init", "kind", "every config");
  cfg.has_oracle = seen.has_section("oracle");

  // Kind-specific applicability: a key for the wrong kind is a typo, not a
  // silent no-op.
  const std::string& pk = cfg.potential_kind;
  if (pk == "quadratic") {
    seen.require("potential", "lambda", "kind = quadratic");
    seen.forbid("potential", "exponent", "kind = quadratic");
    seen.forbid("potential", "components", "kind = quadratic");
  } else if (pk == "pseudo_huber") {
    seen.forbid("potential", "lambda", "kind = pseudo_huber");
    seen.forbid("potential", "exponent", "kind = pseudo_huber");
    seen.forbid("potential", "components", "kind = pseudo_huber");
  } else if (pk == "holder_power") {
    seen.require("potential", "exponent", "kind = holder_power");
    seen.forbid("potential", "lambda", "kind = holder_power");
    seen.forbid("potential", "components", "kind = holder_power");
  } else if (pk == "finite_sum_grid") {
    seen.require("potential", "components", "kind = finite_sum_grid");
    seen.forbid("potential", "lambda", "kind = finite_sum_grid");
    seen.forbid("potential", "exponent", "kind = finite_sum_grid");
  } else {
    fail("unknown potential kind '" + pk +
         "' (one of quadratic, pseudo_huber, holder_power, finite_sum_grid)");
  }

  if (cfg.variant == Variant::kVrLmc) {
    seen.require("sampler", "refresh_prob", "variant = vr_lmc");
  } else {
    seen.forbid("sampler", "refresh_prob", "this variant");
  }
  if (cfg.variant == Variant::kGsLmc) {
    seen.require("sampler", "eta", "variant = gs_lmc");
  } else {
    seen.forbid("sampler", "eta", "this variant");
    seen.forbid("sampler", "batch", "this variant");
  }

  if (cfg.schedule_kind == StepSchedule::Kind::kConstant) {
    seen.require("schedule", "h", "kind = constant");
    seen.forbid("schedule", "h0", "kind = constant");
    seen.forbid("schedule", "alpha", "kind = constant");
  } else {
    seen.require("schedule", "h0", "kind = power_decay");
    seen.require("schedule", "alpha", "kind = power_decay");
    seen.forbid("schedule", "h", "kind = power_decay");
  }

  if (cfg.init_kind == InitLaw::Kind::kPoint) {
    seen.forbid("init", "mean", "kind = point");
    seen.forbid("init", "var", "kind = point");
  } else {
    seen.require("init", "var", "kind = gaussian");
    seen.forbid("init", "value", "kind = gaussian");
  }

  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::string out;
  const auto put = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  };

  out += "[potential]\n";
  put("kind", cfg.potential_kind);
  if (cfg.lambda) put("lambda", format_double(*cfg.lambda));
  if (cfg.exponent) put("exponent", format_double(*cfg.exponent));
  if (cfg.components) put("components", std::to_string(*cfg.components));

  out += "\n[sampler]\n";
  put("variant", variant_name(cfg.variant));
  if (cfg.refresh_prob) put("refresh_prob", format_double(*cfg.refresh_prob));
  if (cfg.eta) put("eta", format_double(*cfg.eta));
  if (cfg.batch) put("batch", std::to_string(*cfg.batch));

  out += "\n[schedule]\n";
  if (cfg.schedule_kind == StepSchedule::Kind::kConstant) {
    put("kind", "constant");
    put("h", format_double(cfg.h));
  } else {
    put("kind", "power_decay");
    put("h0", format_double(cfg.h0));
    put("alpha", format_double(cfg.alpha));
  }

  out += "\n[run]\n";
  put("N", std::to_string(cfg.n_steps));
  put("d", std::to_string(cfg.dim));
  put("n_chains", std::to_string(cfg.n_chains));
  put("seed", std::to_string(cfg.seed));
  if (!cfg.snapshot_steps.empty()) {
    std::string list;
    for (std::size_t i = 0; i < cfg.snapshot_steps.size(); ++i) {
      if (i) list += ",";
      list += std::to_string(cfg.snapshot_steps[i]);
    }
    put("snapshot_steps", list);
  }

  out += "\n[init]\n";
  if (cfg.init_kind == InitLaw::Kind::kPoint) {
    put("kind", "point");
    put("value", format_double(cfg.init_value));
  } else {
    put("kind", "gaussian");
    put("mean", format_double(cfg.init_mean));
    put("var", format_double(cfg.init_var));
  }

  if (cfg.has_oracle) {
    out += "\n[oracle]\n";
    put("bias", format_double(cfg.oracle_bias));
    put("variance", format_double(cfg.oracle_variance));
  }

  out += "\n[output]\n";
  put("directory", cfg.output_directory);
  return out;
}

Experiment build_experiment(const ExperimentConfig& cfg) {
  if (cfg.dim == 0) fail("[run] d must be at least 1");
  if (cfg.n_chains == 0) fail("[run] n_chains must be at least 1");

  std::shared_ptr<const Potential> pot;
  if (cfg.potential_kind == "quadratic") {
    pot = std::make_shared<Quadratic>(*cfg.lambda, cfg.dim);
  } else if (cfg.potential_kind == "pseudo_huber") {
    pot = std::make_shared<PseudoHuber>(cfg.dim);
  } else if (cfg.potential_kind == "holder_power") {
    pot = std::make_shared<HolderPower>(*cfg.exponent, cfg.dim);
  } else {
    if (cfg.dim != 1) fail("finite_sum_grid potentials are one-dimensional");
    pot = std::make_shared<FiniteSumQuadratic>(
        unit_grid_finite_sum(static_cast<std::size_t>(*cfg.components)));
  }

  RunConfig run;
  run.variant = cfg.variant;
  run.schedule = cfg.schedule_kind == StepSchedule::Kind::kConstant
                     ? StepSchedule::constant(cfg.h)
                     : StepSchedule::power_decay(cfg.h0, cfg.alpha);
  run.n_steps = cfg.n_steps;
  run.dim = cfg.dim;
  run.n_chains = cfg.n_chains;
  run.master_seed = cfg.seed;
  if (cfg.init_kind == InitLaw::Kind::kPoint) {
    Point x(cfg.dim, 0.0);
    x[0] = cfg.init_value;
    run.init = InitLaw::point(std::move(x));
  } else {
    run.init = InitLaw::gaussian(cfg.init_mean, cfg.init_var);
  }
  run.vr_refresh_prob = cfg.refresh_prob;
  run.smoothing_eta = cfg.eta;
  run.smoothing_batch =
      cfg.batch ? static_cast<std::uint32_t>(*cfg.batch) : 1u;

  std::shared_ptr<const StochasticGradientOracle> oracle;
  if (cfg.has_oracle) {
    if (cfg.variant != Variant::kSgLmc) {
      fail("[oracle] bias/variance injection requires variant = sg_lmc");
    }
    if (!std::isfinite(cfg.oracle_bias)) fail("[oracle] bias must be finite");
    if (!(cfg.oracle_variance >= 0.0)) {
      fail("[oracle] variance must be nonnegative");
    }
    Point bias(cfg.dim, 0.0);
    bias[0] = cfg.oracle_bias;
    oracle = std::make_shared<LinearNoisyOracle>(pot, std::move(bias),
                                                 cfg.oracle_variance);
  } else if (cfg.variant == Variant::kSgLmc) {
    fail("variant sg_lmc requires an [oracle] section");
  }

  std::vector<std::uint64_t> snaps = cfg.snapshot_steps;
  if (snaps.empty()) {
    snaps.push_back(0);
    if (cfg.n_steps > 0) snaps.push_back(cfg.n_steps);
  }
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    if (i > 0 && snaps[i] <= snaps[i - 1]) {
      fail("[run] snapshot_steps must be strictly increasing");
    }
    if (snaps[i] > cfg.n_steps) {
      fail("[run] snapshot_steps entries must not exceed N");
    }
  }

  return Experiment{std::move(run), std::move(pot), std::move(oracle),
                    std::move(snaps), cfg.output_directory};
}

}  // namespace lfl::app
