#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lfl/errors.hpp"
#include "lfl/quadrature.hpp"

using namespace lfl;

TEST_CASE("adaptive simpson on smooth integrands") {
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0,
                         std::numbers::pi) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-10));
  CHECK(adaptive_simpson([](double) { return 3.0; }, -2.0, 5.0) ==
        doctest::Approx(21.0).epsilon(1e-12));
}

TEST_CASE("adaptive simpson handles an interior kink") {
  CHECK(adaptive_simpson([](double x) { return std::abs(x); }, -1.0, 2.0) ==
        doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("adaptive simpson rejects empty or reversed intervals") {
  CHECK_THROWS_AS(adaptive_simpson([](double) { return 1.0; }, 1.0, 1.0),
                  ConfigError);
  CHECK_THROWS_AS(adaptive_simpson([](double) { return 1.0; }, 2.0, 1.0),
                  ConfigError);
}

TEST_CASE("adaptive simpson reports non-convergence with both estimates") {
  // An integrable interior singularity at an irrational point: composite
  // Simpson converges like 1/sqrt(panels), far too slowly for the doubling
  // budget, so this must surface as QuadratureError, not a wrong answer.
  const double pole = 1.0 / std::numbers::pi;
  try {
    adaptive_simpson(
        [&](double x) { return 1.0 / std::sqrt(std::abs(x - pole)); }, 0.0,
        1.0);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(std::isfinite(e.last_estimate()));
    CHECK(std::isfinite(e.previous_estimate()));
    CHECK(e.last_estimate() != e.previous_estimate());
    // Both estimates bracket the true value 2(sqrt(1-pole) + sqrt(pole)).
    const double truth = 2.0 * (std::sqrt(1.0 - pole) + std::sqrt(pole));
    CHECK(e.last_estimate() == doctest::Approx(truth).epsilon(0.01));
  }
}

TEST_CASE("gauss-legendre integrates high-degree polynomials exactly") {
  const GaussLegendre& g32 = GaussLegendre::order32();
  const GaussLegendre& g64 = GaussLegendre::order64();
  CHECK(g32.order() == 32);
  CHECK(g64.order() == 64);
  // Order n is exact through degree 2n - 1.
  CHECK(g32.integrate([](double x) { return std::pow(x, 62); }, -1.0, 1.0) ==
        doctest::Approx(2.0 / 63.0).epsilon(1e-13));
  CHECK(g64.integrate([](double x) { return std::pow(x, 126); }, -1.0, 1.0) ==
        doctest::Approx(2.0 / 127.0).epsilon(1e-12));
  CHECK(g32.integrate([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
}

TEST_CASE("gauss-legendre nodes are symmetric with weights summing to the length") {
  const GaussLegendre g(16);
  double weight_sum = 0.0;
  for (int i = 0; i < 16; ++i) {
    CHECK(g.nodes()[static_cast<std::size_t>(i)] ==
          doctest::Approx(-g.nodes()[static_cast<std::size_t>(15 - i)])
              .epsilon(1e-15));
    weight_sum += g.weights()[static_cast<std::size_t>(i)];
  }
  CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(GaussLegendre(1), ConfigError);
}
