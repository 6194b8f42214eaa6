#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "lfl/builtin_potentials.hpp"
#include "lfl/errors.hpp"
#include "lfl/potential.hpp"

using namespace lfl;

namespace {

double max_abs_diff(const Point& a, const Point& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("quadratic potential") {
  const Quadratic pot(2.0, 3);
  const Point x{1.0, -2.0, 0.5};
  CHECK(pot.value(x) == doctest::Approx(2.0 * 5.25 / 2.0).epsilon(1e-15));
  CHECK(pot.gradient(x) == Point{2.0, -4.0, 1.0});
  CHECK(pot.lipschitz_grad() == 2.0);
  CHECK(pot.lipschitz_hessian() == 0.0);
  REQUIRE(pot.holder().has_value());
  CHECK(pot.holder()->s == 1.0);
  CHECK(pot.holder()->l == 2.0);
  CHECK_NOTHROW(audit_declared_constants(pot, 200));

  const Point fd = finite_difference_gradient(pot, x);
  CHECK(max_abs_diff(fd, pot.gradient(x)) < 1e-6);
}

TEST_CASE("pseudo-huber potential") {
  const PseudoHuber pot(2);
  const Point x{3.0, -4.0};
  CHECK(pot.value(x) == doctest::Approx(std::sqrt(26.0)).epsilon(1e-15));
  const Point g = pot.gradient(x);
  CHECK(g[0] == doctest::Approx(3.0 / std::sqrt(26.0)).epsilon(1e-15));
  CHECK(g[1] == doctest::Approx(-4.0 / std::sqrt(26.0)).epsilon(1e-15));
  CHECK(pot.lipschitz_grad() == 1.0);
  REQUIRE(pot.growth().has_value());
  CHECK(pot.growth()->a == 1.0);
  CHECK(pot.growth()->b == 1.0);
  CHECK(pot.growth()->gamma == 1.0);
  CHECK(pot.growth()->xi == 0.0);
  CHECK(pot.growth()->m == 1.0);
  CHECK_NOTHROW(audit_declared_constants(pot, 200));
  CHECK(max_abs_diff(finite_difference_gradient(pot, x), g) < 1e-6);
}

TEST_CASE("holder power potential") {
  const HolderPower pot(0.5, 1);
  CHECK(pot.s() == 0.5);
  REQUIRE(pot.holder().has_value());
  CHECK(pot.holder()->s == 0.5);
  CHECK(pot.holder()->l == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_FALSE(pot.lipschitz_grad().has_value());

  const Point x{4.0};
  CHECK(pot.value(x) == doctest::Approx(8.0 / 1.5).epsilon(1e-15));
  CHECK(pot.gradient(x)[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(pot.gradient(Point{-4.0})[0] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(pot.gradient(Point{0.0})[0] == 0.0);
  CHECK(max_abs_diff(finite_difference_gradient(pot, x), pot.gradient(x)) <
        1e-5);
  CHECK_NOTHROW(audit_declared_constants(pot, 200));

  CHECK_THROWS_AS(HolderPower(0.0, 1), ConfigError);
  CHECK_THROWS_AS(HolderPower(1.5, 1), ConfigError);
}

TEST_CASE("finite-sum quadratic") {
  const FiniteSumQuadratic pot = unit_grid_finite_sum(4);
  CHECK(pot.n_components() == 4);
  CHECK(pot.centers() ==
        std::vector<Point>{{-1.5}, {-0.5}, {0.5}, {1.5}});
  CHECK(pot.lipschitz_grad() == 1.0);

  // The full gradient is the left-to-right mean of component gradients —
  // exact in floating point, which downstream bitwise identities rely on.
  const Point x{0.3};
  Point manual{0.0};
  Point tmp(1);
  for (std::size_t i = 0; i < pot.n_components(); ++i) {
    pot.component_gradient(i, x, std::span<double>(tmp));
    manual[0] += tmp[0];
  }
  manual[0] *= 1.0 / 4.0;
  CHECK(pot.gradient(x) == manual);
  // Symmetric unit grid around zero: the mean gradient at x is x itself.
  CHECK(pot.gradient(x)[0] == doctest::Approx(0.3).epsilon(1e-15));

  // The worked correction identity: equal-curvature components make a
  // single-component correction reproduce the full gradient exactly.
  const FiniteSumQuadratic two(std::vector<Point>{{1.0}, {-1.0}});
  Point g_new(1), g_old(1);
  two.component_gradient(0, Point{1.0}, std::span<double>(g_new));
  two.component_gradient(0, Point{2.0}, std::span<double>(g_old));
  CHECK(2.0 + g_new[0] - g_old[0] == 1.0);

  CHECK_THROWS_AS(unit_grid_finite_sum(0), ConfigError);
}

TEST_CASE("gaussian mixture potential") {
  const GaussianMixture1D mix = skewed_bimodal(2.0);
  CHECK(mix.means() == std::vector<double>{-2.0, 2.0});
  CHECK(mix.weights() == std::vector<double>{0.75, 0.25});
  CHECK(symmetric_bimodal(3.0).weights() == std::vector<double>{0.5, 0.5});

  // Density, log-density, and score agree with a direct evaluation.
  const double x = 0.7;
  const double phi_l = std::exp(-(x + 2.0) * (x + 2.0) / 2.0);
  const double phi_r = std::exp(-(x - 2.0) * (x - 2.0) / 2.0);
  const double rho =
      (0.75 * phi_l + 0.25 * phi_r) / std::sqrt(2.0 * std::numbers::pi);
  CHECK(mix.density(x) == doctest::Approx(rho).epsilon(1e-13));
  const LogDensityScore ls = mix.logdensity_and_score(x);
  CHECK(ls.log_density == doctest::Approx(std::log(rho)).epsilon(1e-13));
  const double expected_score =
      (0.75 * phi_l * (-(x + 2.0)) + 0.25 * phi_r * (-(x - 2.0))) /
      (0.75 * phi_l + 0.25 * phi_r);
  CHECK(ls.score == doctest::Approx(expected_score).epsilon(1e-12));

  // V = -log rho: gradient is minus the score.
  CHECK(mix.gradient(Point{x})[0] == doctest::Approx(-ls.score).epsilon(1e-12));
  CHECK(mix.value(Point{x}) == doctest::Approx(-ls.log_density).epsilon(1e-12));

  // The score stays meaningful deep in the tails.
  const LogDensityScore tail = mix.logdensity_and_score(30.0);
  CHECK(std::isfinite(tail.log_density));
  CHECK(tail.score == doctest::Approx(-(30.0 - 2.0)).epsilon(1e-3));

  REQUIRE(mix.lipschitz_grad().has_value());
  CHECK_NOTHROW(audit_declared_constants(mix, 200));
}

TEST_CASE("growth parameter validation") {
  GrowthParams ok{1.0, 1.0, 1.0, 0.0, 1.0};
  CHECK_NOTHROW(ok.validate());
  GrowthParams zero_gamma{1.0, 1.0, 0.0, 0.0, 1.0};
  CHECK_THROWS_AS(zero_gamma.validate(), ConfigError);
  GrowthParams big_xi{1.0, 1.0, 1.0, 0.75, 1.0};
  CHECK_THROWS_AS(big_xi.validate(), ConfigError);
  GrowthParams big_gamma{1.0, 1.0, 2.5, 1.0, 1.0};
  CHECK_THROWS_AS(big_gamma.validate(), ConfigError);
}

TEST_CASE("the constant audit catches lies") {
  // Claims gradient-Lipschitz 0.5 while the true constant is 4.
  struct Liar final : Potential {
    std::size_t dimension() const override { return 1; }
    double value(std::span<const double> x) const override {
      return 2.0 * x[0] * x[0];
    }
    void gradient(std::span<const double> x,
                  std::span<double> out) const override {
      out[0] = 4.0 * x[0];
    }
    std::optional<double> lipschitz_grad() const override { return 0.5; }
  };
  CHECK_THROWS_AS(audit_declared_constants(Liar{}, 200), AuditError);
}
