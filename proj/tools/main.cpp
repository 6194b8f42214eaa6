// Command line front end: run experiments from config files, print the
// mixture example table, evaluate guarantee calculators, and drive the
// acceptance suite.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfl/app/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-time Langevin sampling laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  unsigned workers = 0;
  std::string out_dir;
  CLI::App* run = app.add_subcommand(
      "run", "Run an experiment config and write estimates.csv / bounds.csv");
  run->add_option("config", config_path, "Experiment config file")->required();
  run->add_option("--workers", workers,
                  "Worker threads (0 = hardware concurrency)");
  CLI::Option* out_opt =
      run->add_option("--out", out_dir, "Output directory (overrides config)");

  std::vector<double> m_values;
  CLI::App* example = app.add_subcommand(
      "example", "Two-mode mixture divergence table for given separations");
  example->add_option("--m", m_values, "Mode separation values")
      ->required()
      ->delimiter(',');

  std::string theorem_id;
  std::vector<std::string> assignments;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Evaluate a named guarantee with key=value inputs");
  bounds->add_option("theorem", theorem_id, "Guarantee identifier")
      ->required();
  bounds->add_option("inputs", assignments, "key=value assignments");

  std::string suite;
  int criterion = 0;
  CLI::App* acceptance =
      app.add_subcommand("acceptance", "Run the acceptance suite");
  acceptance->add_option("suite", suite, "fast or full")->required();
  CLI::Option* criterion_opt = acceptance->add_option(
      "--criterion", criterion, "Run a single criterion (1-based index)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lfl::app::kExitOk : lfl::app::kExitUsage;
  }

  if (run->parsed()) {
    lfl::app::RunOptions options;
    options.config_path = config_path;
    options.workers = workers;
    if (out_opt->count() > 0) options.out_dir = out_dir;
    return lfl::app::cmd_run(options, std::cout, std::cerr);
  }
  if (example->parsed()) {
    return lfl::app::cmd_example(m_values, std::cout, std::cerr);
  }
  if (bounds->parsed()) {
    return lfl::app::cmd_bounds(theorem_id, assignments, std::cout, std::cerr);
  }
  std::optional<int> single;
  if (criterion_opt->count() > 0) single = criterion;
  return lfl::app::cmd_acceptance(suite, single, std::cout, std::cerr);
}
