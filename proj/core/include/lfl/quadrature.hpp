#pragma once

#include <functional>
#include <vector>

namespace lfl {

// Composite Simpson integration over [a, b], doubling the panel count until
// two successive refinements agree to 1e-10 relative (1e-14 absolute floor).
// Throws QuadratureError carrying the last two estimates if 24 doublings do
// not converge.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b);

// Fixed-order Gauss-Legendre rule.  Nodes/weights for the standard interval
// [-1, 1], computed once per order by Newton iteration on the Legendre
// recurrence (accurate to machine precision for the orders used here).
class GaussLegendre {
 public:
  explicit GaussLegendre(int order);

  int order() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  template <typename F>
  double integrate(F&& f, double a, double b) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      acc += weights_[i] * f(mid + half * nodes_[i]);
    }
    return acc * half;
  }

  // Shared instances of the two orders the analytic oracles use.
  static const GaussLegendre& order32();
  static const GaussLegendre& order64();

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace lfl
