#include <doctest.h>

#include <cmath>
#include <memory>

#include "lfl/builtin_potentials.hpp"
#include "lfl/errors.hpp"
#include "lfl/gradient_oracle.hpp"

using namespace lfl;

TEST_CASE("gaussian norm moments") {
  // Frozen from an independent Gamma-function evaluation.
  CHECK(gaussian_norm_moment(1, 2.5) ==
        doctest::Approx(1.2332684379936878).epsilon(1e-14));
  // Closed-form cases: E||z||^2 = d, E||z||^4 = d(d+2).
  CHECK(gaussian_norm_moment(3, 2.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(gaussian_norm_moment(5, 4.0) == doctest::Approx(35.0).epsilon(1e-13));
  CHECK(gaussian_norm_moment(7, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("smoothing parameter formulas") {
  const SmoothingParams p = smoothing_params(1.0, 0.5, 1, 0.01, 1);
  CHECK(p.l_hat == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(p.delta_v == doctest::Approx(0.04).epsilon(1e-14));
  CHECK(p.delta_b == doctest::Approx(0.015209510401513906).epsilon(1e-13));

  // Batching divides only the variance.
  const SmoothingParams batched = smoothing_params(1.0, 0.5, 1, 0.01, 4);
  CHECK(batched.l_hat == p.l_hat);
  CHECK(batched.delta_v == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(batched.delta_b == p.delta_b);

  // eta = 0 is the exact oracle.
  const SmoothingParams exact = smoothing_params(2.0, 1.0, 3, 0.0, 1);
  CHECK(exact.l_hat == 2.0);
  CHECK(exact.delta_v == 0.0);
  CHECK(exact.delta_b == 0.0);
}

TEST_CASE("exact oracle is a bitwise passthrough") {
  auto pot = std::make_shared<Quadratic>(1.5, 2);
  const ExactGradientOracle oracle(pot);
  CHECK(oracle.l_hat() == 1.5);
  CHECK(oracle.delta_b() == 0.0);
  CHECK(oracle.delta_v() == 0.0);
  const Point x{0.3, -1.1};
  const RngStream stream{99u, 0u, 0u};
  CHECK(oracle.query(x, 5, stream) == pot->gradient(x));
}

TEST_CASE("linear noisy oracle") {
  auto pot = std::make_shared<Quadratic>(1.0, 1);
  const LinearNoisyOracle oracle(pot, Point{0.3}, 0.25);
  CHECK(oracle.delta_b() == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(oracle.delta_v() == 0.25);
  CHECK(oracle.l_hat() == 1.0);

  const Point x{2.0};
  const RngStream stream{7u, 3u, 0u};
  SUBCASE("draws are pure functions of (x, step, stream identity)") {
    CHECK(oracle.query(x, 4, stream) == oracle.query(x, 4, stream));
    CHECK(oracle.query(x, 4, stream) != oracle.query(x, 5, stream));
  }
  SUBCASE("zero bias and zero noise degenerate to the exact gradient") {
    const LinearNoisyOracle exact(pot, Point{0.0}, 0.0);
    CHECK(exact.query(x, 4, stream) == pot->gradient(x));
  }
  SUBCASE("the construction audit accepts honest declarations") {
    CHECK_NOTHROW(audit_oracle(oracle, *pot, 2048));
  }
}

TEST_CASE("the oracle audit catches lies") {
  // Adds a unit bias while declaring none.
  struct Liar final : StochasticGradientOracle {
    std::shared_ptr<const Potential> pot = std::make_shared<Quadratic>(1.0, 1);
    using StochasticGradientOracle::query;
    std::size_t dimension() const override { return 1; }
    void query(std::span<const double> x, std::uint64_t,
               const RngStream&, std::span<double> out) const override {
      pot->gradient(x, out);
      out[0] += 1.0;
    }
    double l_hat() const override { return 1.0; }
    double delta_b() const override { return 0.0; }
    double delta_v() const override { return 0.0; }
  };
  const Liar liar;
  CHECK_THROWS_AS(audit_oracle(liar, *liar.pot, 512), AuditError);
}

TEST_CASE("smoothed oracle deterministic core") {
  auto quad = std::make_shared<Quadratic>(1.0, 1);
  SUBCASE("single draw on a linear gradient") {
    const SmoothedOracle oracle(quad, 0.2, 1);
    Point out(1);
    const Point zetas{0.5};
    oracle.gradient_given_noise(Point{1.0}, zetas, std::span<double>(out));
    CHECK(out[0] == 1.1);
  }
  SUBCASE("antithetic pair cancels exactly for linear gradients") {
    const SmoothedOracle oracle(quad, 0.25, 2);
    Point out(1);
    const Point zetas{1.0, -1.0};
    oracle.gradient_given_noise(Point{1.0}, zetas, std::span<double>(out));
    CHECK(out[0] == 1.0);
  }
  SUBCASE("batch mean over explicit noise") {
    auto pot = std::make_shared<HolderPower>(0.5, 1);
    const SmoothedOracle oracle(pot, 0.2, 2);
    Point out(1);
    const Point zetas{1.0, -1.0};
    oracle.gradient_given_noise(Point{1.0}, zetas, std::span<double>(out));
    const double expected = (std::sqrt(1.2) + std::sqrt(0.8)) / 2.0;
    CHECK(out[0] == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("smoothed oracle with eta = 0 consumes nothing and is exact") {
  auto pot = std::make_shared<Quadratic>(1.0, 2);
  const SmoothedOracle oracle(pot, 0.0, 1);
  CHECK(oracle.l_hat() == 1.0);
  CHECK(oracle.delta_b() == 0.0);
  CHECK(oracle.delta_v() == 0.0);
  const Point x{0.4, -2.0};
  const RngStream stream{11u, 0u, 0u};
  CHECK(oracle.query(x, 0, stream) == pot->gradient(x));
  CHECK(oracle.query(x, 9, stream) == pot->gradient(x));
}

TEST_CASE("smoothed oracle declared constants pass the audit") {
  auto pot = std::make_shared<HolderPower>(0.5, 1);
  const SmoothedOracle oracle(pot, 0.05, 2);
  CHECK_NOTHROW(audit_oracle(oracle, *pot, 2048));
}

TEST_CASE("smoothed gradient free function matches a direct query") {
  auto pot = std::make_shared<HolderPower>(0.5, 1);
  const SmoothedOracle oracle(pot, 0.1, 3);
  const RngStream stream{123u, 4u, 0u};
  const Point x{0.8};
  CHECK(smoothed_gradient(oracle, x, stream, 6) == oracle.query(x, 6, stream));
}

TEST_CASE("smoothing bias at a matched probe point scales like eta^(2s)") {
  // On V with s = 1/2, probing at x = eta keeps the kink inside the
  // smoothing window: the bias is c * sqrt(eta) with
  // c = E[sign(1+z) sqrt|1+z|] - 1 = -0.20355074403754139 (independent
  // quadrature), so bias^2 scales exactly like eta^(2s) = eta.
  auto pot = std::make_shared<HolderPower>(0.5, 1);
  const double c = -0.20355074403754139;
  const std::size_t draws = 20000;

  double bias2[2];
  const double etas[2] = {0.04, 0.01};
  for (int which = 0; which < 2; ++which) {
    const double eta = etas[which];
    const SmoothedOracle oracle(pot, eta, 1);
    RngStream stream{0x5107eu, static_cast<std::uint32_t>(which), 0u};
    Point out(1);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      oracle.query(Point{eta}, i, stream, std::span<double>(out));
      sum += out[0];
      sum_sq += out[0] * out[0];
    }
    const double mean = sum / static_cast<double>(draws);
    const double var =
        (sum_sq - sum * sum / static_cast<double>(draws)) /
        static_cast<double>(draws - 1);
    const double se = std::sqrt(var / static_cast<double>(draws));
    const double predicted = std::sqrt(eta) * (1.0 + c);
    CHECK(std::abs(mean - predicted) <= 5.0 * se);
    bias2[which] = (mean - std::sqrt(eta)) * (mean - std::sqrt(eta));
  }
  const double slope = (std::log(bias2[0]) - std::log(bias2[1])) /
                       (std::log(etas[0]) - std::log(etas[1]));
  CHECK(slope == doctest::Approx(1.0).epsilon(0.25));
}
