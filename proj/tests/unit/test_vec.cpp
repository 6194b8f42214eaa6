#include <doctest.h>

#include <cmath>
#include <limits>

#include "lfl/vec.hpp"

using namespace lfl;

TEST_CASE("dot, norms, and distances") {
  const Point a{1.0, 2.0, -3.0};
  const Point b{4.0, 0.5, 2.0};
  CHECK(dot(a, b) == -1.0);
  CHECK(squared_norm(a) == 14.0);
  CHECK(norm(Point{3.0, 4.0}) == 5.0);
  CHECK(squared_distance(a, b) == doctest::Approx(9.0 + 2.25 + 25.0));
  CHECK(squared_distance(a, a) == 0.0);
}

TEST_CASE("axpy accumulates in place") {
  const Point x{1.0, -2.0};
  Point y{10.0, 20.0};
  axpy(0.5, x, std::span<double>(y));
  CHECK(y == Point{10.5, 19.0});
}

TEST_CASE("all_finite flags NaN and infinity") {
  CHECK(all_finite(Point{0.0, -1e308, 1e-300}));
  CHECK_FALSE(all_finite(Point{0.0, std::numeric_limits<double>::infinity()}));
  CHECK_FALSE(all_finite(Point{std::numeric_limits<double>::quiet_NaN()}));
  CHECK_FALSE(all_finite(Point{-std::numeric_limits<double>::infinity(), 1.0}));
  CHECK(all_finite(Point{}));
}
