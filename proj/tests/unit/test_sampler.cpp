#include <doctest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <vector>

#include "lfl/builtin_potentials.hpp"
#include "lfl/errors.hpp"
#include "lfl/gradient_oracle.hpp"
#include "lfl/sampler.hpp"

using namespace lfl;

namespace {

RunConfig base_config(Variant variant, double h, std::uint32_t n_steps,
                      std::uint32_t dim = 1) {
  RunConfig config;
  config.variant = variant;
  config.schedule = StepSchedule::constant(h);
  config.n_steps = n_steps;
  config.dim = dim;
  config.n_chains = 4;
  config.master_seed = 0xfeedu;
  config.init = InitLaw::gaussian(0.0, 1.0);
  return config;
}

bool bitwise_equal(const Point& a, const Point& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("interpolation covers the step endpoints") {
  const Sampler sampler(base_config(Variant::kLmc, 0.05, 10, 3),
                        std::make_shared<Quadratic>(1.0, 3));
  ChainState state = sampler.initial_state(2);
  sampler.step(state);

  SUBCASE("tau = 0 returns the current iterate") {
    CHECK(sampler.interpolate(state, 0.0) == state.x);
  }
  SUBCASE("tau = h is the next iterate, bit for bit") {
    const Point mid = sampler.interpolate(state, 0.05);
    ChainState next = state;
    sampler.step(next);
    CHECK(bitwise_equal(mid, next.x));
  }
  SUBCASE("tau outside [0, h] is rejected") {
    CHECK_THROWS_AS(sampler.interpolate(state, -0.01), ConfigError);
    CHECK_THROWS_AS(sampler.interpolate(state, 0.06), ConfigError);
  }
}

TEST_CASE("chains are pure functions of (seed, chain index)") {
  const RunConfig config = base_config(Variant::kLmc, 0.05, 20, 2);
  const Sampler a(config, std::make_shared<Quadratic>(1.0, 2));
  const Sampler b(config, std::make_shared<Quadratic>(1.0, 2));
  const std::uint64_t steps[] = {0, 7, 20};
  const Trajectory ta = a.run(1, steps);
  const Trajectory tb = b.run(1, steps);
  REQUIRE(ta.snapshots.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(bitwise_equal(ta.snapshots[i].x, tb.snapshots[i].x));
  }
  // Different chains see different noise.
  CHECK_FALSE(bitwise_equal(a.run(0, steps).snapshots[2].x,
                            ta.snapshots[2].x));
}

TEST_CASE("trajectory bookkeeping") {
  const RunConfig config = base_config(Variant::kLmc, 0.05, 20);
  const Sampler sampler(config, std::make_shared<Quadratic>(1.0, 1));
  const std::uint64_t steps[] = {0, 5, 20};
  const Trajectory traj = sampler.run(0, steps);
  REQUIRE(traj.snapshots.size() == 3);
  CHECK(traj.component_evals == 0);
  CHECK(traj.snapshots[0].k == 0);
  CHECK(traj.snapshots[0].t == 0.0);
  CHECK(traj.snapshots[0].x == sampler.initial_state(0).x);
  CHECK(traj.snapshots[1].k == 5);
  CHECK(traj.snapshots[2].k == 20);
  // Elapsed chain time is bit-identical to the schedule prefix.
  CHECK(traj.snapshots[1].t == config.schedule.elapsed(5));
  CHECK(traj.snapshots[2].t == config.schedule.elapsed(20));
}

TEST_CASE("gaussian and point initial laws") {
  RunConfig config = base_config(Variant::kLmc, 0.05, 1, 2);
  config.init = InitLaw::gaussian(3.0, 4.0);
  const Sampler sampler(config, std::make_shared<Quadratic>(1.0, 2));
  const ChainState s0 = sampler.initial_state(0);
  const ChainState s1 = sampler.initial_state(1);
  CHECK(s0.x != s1.x);
  CHECK(s0.k == 0);
  CHECK(s0.t == 0.0);

  RunConfig point_cfg = config;
  point_cfg.init = InitLaw::point(Point{1.0, -2.0});
  const Sampler point_sampler(point_cfg, std::make_shared<Quadratic>(1.0, 2));
  CHECK(point_sampler.initial_state(0).x == Point{1.0, -2.0});
  CHECK(point_sampler.initial_state(7).x == Point{1.0, -2.0});
}

TEST_CASE("degenerate parameters replay plain LMC bit for bit") {
  const std::uint64_t steps[] = {30};

  SUBCASE("smoothed variant with eta = 0") {
    RunConfig gs = base_config(Variant::kGsLmc, 0.05, 30);
    gs.smoothing_eta = 0.0;
    const Sampler smoothed(gs, std::make_shared<Quadratic>(1.0, 1));
    const Sampler plain(base_config(Variant::kLmc, 0.05, 30),
                        std::make_shared<Quadratic>(1.0, 1));
    for (std::uint32_t chain = 0; chain < 4; ++chain) {
      CHECK(bitwise_equal(smoothed.run(chain, steps).snapshots[0].x,
                          plain.run(chain, steps).snapshots[0].x));
    }
  }

  SUBCASE("stochastic-gradient variant with a noiseless unbiased oracle") {
    auto pot = std::make_shared<Quadratic>(1.0, 1);
    const Sampler sg(base_config(Variant::kSgLmc, 0.05, 30), pot,
                     std::make_shared<LinearNoisyOracle>(pot, Point{0.0}, 0.0));
    const Sampler plain(base_config(Variant::kLmc, 0.05, 30), pot);
    for (std::uint32_t chain = 0; chain < 4; ++chain) {
      CHECK(bitwise_equal(sg.run(chain, steps).snapshots[0].x,
                          plain.run(chain, steps).snapshots[0].x));
    }
  }

  SUBCASE("variance reduction with refresh probability 1") {
    auto pot = std::make_shared<FiniteSumQuadratic>(unit_grid_finite_sum(10));
    RunConfig vr = base_config(Variant::kVrLmc, 0.03, 20);
    vr.vr_refresh_prob = 1.0;
    const Sampler reduced(vr, pot);
    const Sampler plain(base_config(Variant::kLmc, 0.03, 20), pot);
    const std::uint64_t vr_steps[] = {20};
    for (std::uint32_t chain = 0; chain < 4; ++chain) {
      CHECK(bitwise_equal(reduced.run(chain, vr_steps).snapshots[0].x,
                          plain.run(chain, vr_steps).snapshots[0].x));
    }
  }
}

TEST_CASE("variance-reduced bookkeeping") {
  auto pot = std::make_shared<FiniteSumQuadratic>(unit_grid_finite_sum(10));
  RunConfig vr = base_config(Variant::kVrLmc, 0.03, 20);
  vr.vr_refresh_prob = 1.0;
  const Sampler sampler(vr, pot);
  const std::uint64_t steps[] = {20};
  // p = 1 refreshes every step: n component evaluations each.
  CHECK(sampler.run(0, steps).component_evals == 10 * 20);

  // The gradient estimate starts exact and stays finite.
  const ChainState init = sampler.initial_state(0);
  REQUIRE(init.g.has_value());
  CHECK(*init.g == pot->gradient(init.x));
}

TEST_CASE("averaged draws") {
  RunConfig config = base_config(Variant::kAveragedLmc, 0.05, 10);
  const Sampler sampler(config, std::make_shared<Quadratic>(1.0, 1));
  for (std::uint32_t chain = 0; chain < 8; ++chain) {
    const double u = sampler.averaged_time(chain);
    CHECK(u >= 0.0);
    CHECK(u <= 0.5);
    CHECK(u == sampler.averaged_time(chain));  // deterministic per chain
    CHECK(bitwise_equal(sampler.averaged_draw(chain),
                        sampler.averaged_draw_at(chain, u)));
  }
  // The endpoint U = N h is the final iterate bit for bit.
  ChainState state = sampler.initial_state(3);
  for (int k = 0; k < 10; ++k) sampler.step(state);
  CHECK(bitwise_equal(sampler.averaged_draw_at(3, 0.5), state.x));
  CHECK_THROWS_AS(sampler.averaged_draw_at(0, -0.1), ConfigError);
  CHECK_THROWS_AS(sampler.averaged_draw_at(0, 0.51), ConfigError);
}

TEST_CASE("admissible step ranges are enforced at construction") {
  SUBCASE("plain LMC needs max step < 1/(6L)") {
    CHECK_THROWS_AS(Sampler(base_config(Variant::kLmc, 0.2, 10),
                            std::make_shared<Quadratic>(1.0, 1)),
                    ConfigError);
    CHECK_NOTHROW(Sampler(base_config(Variant::kLmc, 0.16, 10),
                          std::make_shared<Quadratic>(1.0, 1)));
  }
  SUBCASE("oracle variants need max step < 1/(14 l_hat)") {
    auto pot = std::make_shared<Quadratic>(1.0, 1);
    auto oracle = std::make_shared<LinearNoisyOracle>(pot, Point{0.0}, 0.1);
    CHECK_THROWS_AS(
        Sampler(base_config(Variant::kSgLmc, 0.08, 10), pot, oracle),
        ConfigError);
    CHECK_NOTHROW(
        Sampler(base_config(Variant::kSgLmc, 0.07, 10), pot, oracle));
  }
  SUBCASE("smoothing shrinks the admissible range through l_hat") {
    auto pot = std::make_shared<HolderPower>(0.5, 1);
    RunConfig gs = base_config(Variant::kGsLmc, 0.01, 10);
    gs.smoothing_eta = 0.01;
    // l_hat = sqrt(2)/sqrt(0.01) ~ 14.1: the bound is ~0.005.
    CHECK_THROWS_AS(Sampler(gs, pot), ConfigError);
    gs.schedule = StepSchedule::constant(0.003);
    CHECK_NOTHROW(Sampler(gs, pot));
  }
  SUBCASE("variance reduction needs max step < sqrt(p)/(5L)") {
    auto pot = std::make_shared<FiniteSumQuadratic>(unit_grid_finite_sum(4));
    RunConfig vr = base_config(Variant::kVrLmc, 0.11, 10);
    vr.vr_refresh_prob = 0.25;
    CHECK_THROWS_AS(Sampler(vr, pot), ConfigError);
    vr.schedule = StepSchedule::constant(0.09);
    CHECK_NOTHROW(Sampler(vr, pot));
  }
}

TEST_CASE("configuration errors") {
  auto quad = std::make_shared<Quadratic>(1.0, 1);
  SUBCASE("stochastic-gradient variant needs an oracle") {
    CHECK_THROWS_AS(Sampler(base_config(Variant::kSgLmc, 0.05, 10), quad),
                    ConfigError);
  }
  SUBCASE("an external oracle only drives the oracle variants") {
    auto oracle = std::make_shared<LinearNoisyOracle>(quad, Point{0.0}, 0.0);
    CHECK_THROWS_AS(Sampler(base_config(Variant::kLmc, 0.05, 10), quad, oracle),
                    ConfigError);
  }
  SUBCASE("variance reduction needs a finite sum and a refresh probability") {
    RunConfig vr = base_config(Variant::kVrLmc, 0.05, 10);
    vr.vr_refresh_prob = 0.5;
    CHECK_THROWS_AS(Sampler(vr, quad), ConfigError);
    auto finite = std::make_shared<FiniteSumQuadratic>(unit_grid_finite_sum(4));
    RunConfig no_p = base_config(Variant::kVrLmc, 0.05, 10);
    CHECK_THROWS_AS(Sampler(no_p, finite), ConfigError);
    no_p.vr_refresh_prob = 0.0;
    CHECK_THROWS_AS(Sampler(no_p, finite), ConfigError);
  }
  SUBCASE("averaged draws need a constant schedule and a horizon") {
    RunConfig decay = base_config(Variant::kAveragedLmc, 0.05, 10);
    decay.schedule = StepSchedule::power_decay(0.05, 1.0);
    CHECK_THROWS_AS(Sampler(decay, quad), ConfigError);
    CHECK_THROWS_AS(Sampler(base_config(Variant::kAveragedLmc, 0.05, 0), quad),
                    ConfigError);
  }
  SUBCASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(Sampler(base_config(Variant::kLmc, 0.05, 10, 2), quad),
                    ConfigError);
    RunConfig bad_point = base_config(Variant::kLmc, 0.05, 10, 2);
    bad_point.init = InitLaw::point(Point{1.0});
    CHECK_THROWS_AS(Sampler(bad_point, std::make_shared<Quadratic>(1.0, 2)),
                    ConfigError);
  }
}

TEST_CASE("a diverging chain raises DivergenceError with the step index") {
  // Cubic gradient under a step far outside its stability region; the
  // declared constant is dishonest, which is exactly how a user would hit
  // this guard.
  struct Cubic final : Potential {
    std::size_t dimension() const override { return 1; }
    double value(std::span<const double> x) const override {
      return 0.25 * x[0] * x[0] * x[0] * x[0];
    }
    void gradient(std::span<const double> x,
                  std::span<double> out) const override {
      out[0] = x[0] * x[0] * x[0];
    }
    std::optional<double> lipschitz_grad() const override { return 1.0; }
  };
  RunConfig config = base_config(Variant::kLmc, 0.05, 100);
  config.init = InitLaw::point(Point{10.0});
  const Sampler sampler(config, std::make_shared<Cubic>());
  const std::uint64_t steps[] = {100};
  try {
    sampler.run(0, steps);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.step() >= 1);
    CHECK(std::string(e.what()).find("step") != std::string::npos);
  }
}
