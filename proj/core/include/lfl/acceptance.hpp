#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lfl::acceptance {

// Suite scale: fast uses ensembles of 10^4 chains/draws (seconds, wired
// into the test suite), full uses the 10^5..10^6 sizes the criteria are
// stated at (minutes).
enum class Mode { kFast, kFull };

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;          // measured vs required values
  double seconds = 0.0;        // wall time spent
  double limit_seconds = 0.0;  // 0 = no stated limit
};

int criterion_count();

// Run one criterion (1-based).  Never throws: an escaped exception is
// reported as a failed criterion carrying the message.
CriterionResult run_criterion(int index, Mode mode);

// One line: index, name, PASS/FAIL, measured-vs-required detail, timing.
void print_result(const CriterionResult& result, std::ostream& out);

// Run every criterion in order, printing each line as it completes, plus a
// summary line.
std::vector<CriterionResult> run_all(Mode mode, std::ostream& out);

}  // namespace lfl::acceptance
