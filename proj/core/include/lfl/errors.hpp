#pragma once

#include <stdexcept>
#include <string>

namespace lfl {

// Invalid user-facing configuration: bad step size for the chosen variant,
// malformed config file, out-of-range bound inputs.  Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A chain state stopped being finite.  Maps to exit code 3.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

// Quadrature failed to converge within the doubling budget.  Maps to exit
// code 4.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double last, double previous)
      : std::runtime_error(what), last_(last), previous_(previous) {}
  double last_estimate() const { return last_; }
  double previous_estimate() const { return previous_; }

 private:
  double last_;
  double previous_;
};

// A declared constant failed its randomized construction audit.
class AuditError : public std::logic_error {
 public:
  explicit AuditError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace lfl
