#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lfl::app {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAcceptanceFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDivergence = 3;
inline constexpr int kExitQuadrature = 4;

struct RunOptions {
  std::string config_path;
  unsigned workers = 0;                // 0 = hardware concurrency
  std::optional<std::string> out_dir;  // overrides [output] directory
};

// Execute a config file: run the ensemble and write estimates.csv (one row
// per snapshot and estimator, columns step,time,estimator,value,std_error,n)
// plus bounds.csv with the matching analytic-oracle guarantee rows whenever
// the run is analytically tractable (quadratic potential with positive
// curvature, Gaussian init, constant schedule, exact or linear-noisy
// gradients).  Output bytes depend only on the config, never on the worker
// count or the wall clock.  The LFL_SEED environment variable, when set,
// overrides [run].seed.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);

// The two-mode separation table: for each m, quadrature Fisher information
// against its closed-form ceiling 4 m^2 exp(-m^2/2) and quadrature total
// variation against the 1/800 floor, with pass/fail flags.
int cmd_example(const std::vector<double>& m_values, std::ostream& out,
                std::ostream& err);

// Evaluate one guarantee calculator by id with key=value inputs and print
// its report row.
int cmd_bounds(const std::string& theorem_id,
               const std::vector<std::string>& assignments, std::ostream& out,
               std::ostream& err);

// Run the acceptance suite ("fast" or "full"); optionally a single
// criterion (1-based).  Returns 0 iff every executed criterion passed.
int cmd_acceptance(const std::string& suite, std::optional<int> criterion,
                   std::ostream& out, std::ostream& err);

}  // namespace lfl::app
