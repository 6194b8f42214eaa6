#include "lfl/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

#include "lfl/errors.hpp"

namespace lfl {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b) {
  if (!(a < b)) throw ConfigError("quadrature needs a < b");
  constexpr int kMaxDoublings = 24;
  constexpr double kRelTol = 1e-10;
  constexpr double kAbsTol = 1e-14;
  // Require a few refinements before trusting agreement, so symmetric
  // integrands cannot fool a coarse grid.
  constexpr std::uint64_t kMinPanels = 32;

  const double ends = f(a) + f(b);
  // Composite Simpson on m panels needs f at the m+1 uniform nodes; when m
  // doubles, the new nodes are the old panels' midpoints (odd indices).
  // interior = sum of f over all interior nodes of the current grid.
  double interior = 0.0;
  double previous = 0.0;
  std::uint64_t m = 1;
  for (int doubling = 0; doubling <= kMaxDoublings; ++doubling) {
    m *= 2;
    const double dx = (b - a) / static_cast<double>(m);
    double odd = 0.0;
    for (std::uint64_t j = 1; j < m; j += 2) {
      odd += f(a + static_cast<double>(j) * dx);
    }
    const double even = interior;  // old grid's interior nodes, now even
    const double estimate = dx / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    interior += odd;

    if (m >= kMinPanels) {
      const double diff = std::abs(estimate - previous);
      if (diff < kAbsTol || diff < kRelTol * std::abs(estimate)) {
        return estimate;
      }
    }
    if (doubling == kMaxDoublings) {
      throw QuadratureError("composite Simpson did not converge", estimate,
                            previous);
    }
    previous = estimate;
  }
  return previous;  // unreachable
}

GaussLegendre::GaussLegendre(int order) {
  if (order < 2) throw ConfigError("Gauss-Legendre order must be >= 2");
  const std::size_t n = static_cast<std::size_t>(order);
  nodes_.assign(n, 0.0);
  weights_.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi-style initial guess, then Newton on P_n(x) = 0.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
}

const GaussLegendre& GaussLegendre::order32() {
  static const GaussLegendre rule(32);
  return rule;
}

const GaussLegendre& GaussLegendre::order64() {
  static const GaussLegendre rule(64);
  return rule;
}

}  // namespace lfl
