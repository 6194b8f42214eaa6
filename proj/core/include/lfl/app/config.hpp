#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lfl/gradient_oracle.hpp"
#include "lfl/potential.hpp"
#include "lfl/run_config.hpp"

namespace lfl::app {

// A parsed experiment file: flat key = value entries grouped into fixed
// sections.  The format is deliberately primitive — sections in brackets,
// one key per line, '#' comments — so any language can read it.  Unknown
// sections, unknown keys, duplicate keys, and keys that do not apply to the
// selected kind/variant are all errors: a typo never silently becomes a
// default.
//
// Sections and keys:
//   [potential]  kind = quadratic | pseudo_huber | holder_power | finite_sum_grid
//                lambda      (quadratic: curvature, > 0 for analytic rows)
//                exponent    (holder_power: gradient smoothness s in (0,1])
//                components  (finite_sum_grid: number of summands)
//   [sampler]    variant = lmc | sg_lmc | gs_lmc | vr_lmc | averaged_lmc
//                refresh_prob (vr_lmc), eta + batch (gs_lmc)
//   [schedule]   kind = constant | power_decay; h (constant) or h0, alpha
//   [run]        N, d, n_chains, seed, snapshot_steps (comma list; default 0,N)
//   [init]       kind = point | gaussian; value (point, first axis) or
//                mean, var (gaussian; mean sits on the first axis)
//   [oracle]     bias, variance (first-axis bias + isotropic Gaussian noise
//                injected into the gradient; requires variant sg_lmc)
//   [output]     directory (default ".")
struct ExperimentConfig {
  // [potential]
  std::string potential_kind = "quadratic";
  std::optional<double> lambda;
  std::optional<double> exponent;
  std::optional<std::uint64_t> components;

  // [sampler]
  Variant variant = Variant::kLmc;
  std::optional<double> refresh_prob;
  std::optional<double> eta;
  std::optional<std::uint64_t> batch;

  // [schedule]
  StepSchedule::Kind schedule_kind = StepSchedule::Kind::kConstant;
  double h = 0.0;      // constant schedules
  double h0 = 0.0;     // power-decay schedules
  double alpha = 0.0;  // power-decay schedules

  // [run]
  std::uint32_t n_steps = 0;
  std::uint32_t dim = 1;
  std::uint32_t n_chains = 1;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> snapshot_steps;  // empty = default {0, N}

  // [init]
  InitLaw::Kind init_kind = InitLaw::Kind::kPoint;
  double init_value = 0.0;  // point init, first axis
  double init_mean = 0.0;   // Gaussian init, first axis
  double init_var = 1.0;    // Gaussian init, per-coordinate

  // [oracle]
  bool has_oracle = false;
  double oracle_bias = 0.0;
  double oracle_variance = 0.0;

  // [output]
  std::string output_directory = ".";

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// Parse config text.  Throws ConfigError with a line number on any
// malformed line, unknown or duplicate key, missing required key, or key
// that does not apply to the selected kind.
ExperimentConfig parse_config(const std::string& text);

// Parse a config file; adds the path to error messages.
ExperimentConfig load_config(const std::string& path);

// Canonical text form: fixed section and key order, lossless number
// formatting, exactly the keys that apply.  parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

// Everything cmd_run needs, assembled from a parsed config.
struct Experiment {
  RunConfig run;
  std::shared_ptr<const Potential> potential;
  // Present exactly when the config has an [oracle] section.
  std::shared_ptr<const StochasticGradientOracle> oracle;
  std::vector<std::uint64_t> snapshot_steps;
  std::string output_directory;
};

// Cross-section validation and object construction.  Throws ConfigError on
// inconsistent variant/potential/oracle combinations.
Experiment build_experiment(const ExperimentConfig& cfg);

}  // namespace lfl::app
