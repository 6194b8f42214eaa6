#include <doctest.h>

#include <cmath>

#include "lfl/errors.hpp"
#include "lfl/schedule.hpp"

using namespace lfl;

TEST_CASE("constant schedule") {
  const StepSchedule s = StepSchedule::constant(0.05);
  CHECK(s.is_constant());
  CHECK(s.max_step() == 0.05);
  CHECK(s.step(1) == 0.05);
  CHECK(s.step(1000000) == 0.05);
  CHECK(s.elapsed(0) == 0.0);
  // Left-to-right accumulation, reproduced manually.
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) acc += 0.05;
  CHECK(s.elapsed(3) == acc);
  CHECK(s.sum_squared_steps(4) == doctest::Approx(4 * 0.05 * 0.05).epsilon(1e-15));
}

TEST_CASE("power decay schedule follows h0 / k^alpha") {
  const StepSchedule s = StepSchedule::power_decay(0.1, 0.75);
  CHECK_FALSE(s.is_constant());
  CHECK(s.h0() == 0.1);
  CHECK(s.alpha() == 0.75);
  CHECK(s.max_step() == 0.1);
  CHECK(s.step(1) == 0.1);
  CHECK(s.step(4) == 0.1 * std::pow(4.0, -0.75));
  CHECK(s.step(9) == 0.1 * std::pow(9.0, -0.75));
}

TEST_CASE("consecutive prefixes differ by exactly one rounded addition") {
  // prefix(n) replays the same left-to-right pass as prefix(n-1), so the
  // difference is the single rounded addition of step(n) / step(n)^2 —
  // bitwise, not just approximately.
  const StepSchedule s = StepSchedule::power_decay(0.1, 1.0);
  for (std::uint64_t n = 1; n <= 200; ++n) {
    const StepSchedule::Prefix prev = s.prefix(n - 1);
    const StepSchedule::Prefix cur = s.prefix(n);
    const double h = s.step(n);
    CHECK(cur.elapsed == prev.elapsed + h);
    CHECK(cur.sum_squared == prev.sum_squared + h * h);
  }
}

TEST_CASE("power decay prefix sums match direct summation") {
  const StepSchedule s = StepSchedule::power_decay(0.1, 1.0);
  // Harmonic sums, frozen from an independent high-precision evaluation.
  CHECK(s.elapsed(10) == doctest::Approx(0.29289682539682538).epsilon(1e-15));
  CHECK(s.sum_squared_steps(10) ==
        doctest::Approx(0.015497677311665407).epsilon(1e-15));
}

TEST_CASE("schedule parameter validation") {
  CHECK_THROWS_AS(StepSchedule::constant(0.0), ConfigError);
  CHECK_THROWS_AS(StepSchedule::constant(-0.1), ConfigError);
  CHECK_THROWS_AS(StepSchedule::power_decay(0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(StepSchedule::power_decay(0.1, 0.5), ConfigError);
  CHECK_THROWS_AS(StepSchedule::power_decay(0.1, 1.25), ConfigError);
  CHECK_NOTHROW(StepSchedule::power_decay(0.1, 0.51));
  CHECK_NOTHROW(StepSchedule::power_decay(0.1, 1.0));
}
