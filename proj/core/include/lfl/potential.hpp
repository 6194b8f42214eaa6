#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lfl/vec.hpp"

namespace lfl {

// Declared Holder smoothness of the gradient:
//   ||grad V(x) - grad V(y)|| <= l * ||x - y||^s,  s in (0, 1].
// s = 1 recovers gradient-Lipschitz smoothness.
struct HolderSmoothness {
  double s = 1.0;
  double l = 0.0;
};

// Declared dissipativity / growth constants:
//   <x, grad V(x)> >= a * ||x||^gamma - b      (radial drift)
//   ||grad V(x)||  <= m * (1 + ||x||^xi)       (growth cap)
// with gamma in (0, 2] and 0 <= xi <= gamma / 2.  gamma = 0 is rejected:
// the moment-growth machinery needs the radial term to actually grow.
struct GrowthParams {
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double xi = 0.0;
  double m = 0.0;  // gradient growth constant

  // Throws ConfigError when the parameter ranges above are violated.
  void validate() const;
};

// A potential V : R^d -> R with its gradient and whatever smoothness /
// growth constants the construction can honestly declare.  Declared
// constants are promises: the builtin factories audit them with randomized
// sampling at construction and refuse to hand out objects that lie.
class Potential {
 public:
  virtual ~Potential() = default;

  virtual std::size_t dimension() const = 0;

  virtual double value(std::span<const double> x) const = 0;
  virtual void gradient(std::span<const double> x, std::span<double> out) const = 0;

  Point gradient(std::span<const double> x) const {
    Point g(x.size());
    gradient(x, std::span<double>(g));
    return g;
  }

  // Gradient-Lipschitz constant L, when the potential has one.
  virtual std::optional<double> lipschitz_grad() const { return std::nullopt; }

  // Hessian-Lipschitz constant M, when declared.
  virtual std::optional<double> lipschitz_hessian() const { return std::nullopt; }

  virtual std::optional<HolderSmoothness> holder() const { return std::nullopt; }

  virtual std::optional<GrowthParams> growth() const { return std::nullopt; }
};

// A potential of the form V = (1/n) sum_i f_i.  The full gradient is
// computed as the left-to-right mean of the component gradients, so the
// "mean of component gradients equals the full gradient" identity is exact
// in floating point, not just in expectation.
class FiniteSumPotential : public Potential {
 public:
  using Potential::gradient;

  virtual std::size_t n_components() const = 0;
  virtual void component_gradient(std::size_t i, std::span<const double> x,
                                  std::span<double> out) const = 0;
  virtual double component_value(std::size_t i, std::span<const double> x) const = 0;

  double value(std::span<const double> x) const override;
  void gradient(std::span<const double> x, std::span<double> out) const override;
};

// Randomized audit of the declared constants.  Samples `n_pairs` pairs /
// points from N(0, 5^2 I_d) with a fixed internal seed and checks the
// declared Lipschitz / Holder / growth inequalities pointwise (with a 1e-9
// relative slack for roundoff).  Throws AuditError naming the violated
// inequality and a witness point on failure.
void audit_declared_constants(const Potential& pot, std::size_t n_pairs = 1000);

// Central-difference gradient of `pot` at x, for consistency tests.
Point finite_difference_gradient(const Potential& pot, std::span<const double> x,
                                 double step_scale = 1e-5);

}  // namespace lfl
