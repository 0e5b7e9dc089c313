#include <cmath>

#include "doctest.h"
#include "stpbo/nelder_mead.hpp"
#include "stpbo/random.hpp"

using namespace stpbo;

TEST_CASE("minimizes a quadratic inside the bounds") {
  Vector target(2);
  target << 0.3, -0.2;
  auto f = [&](const Vector& x) { return (x - target).squaredNorm(); };
  const auto r = nelder_mead_minimize(f, Vector::Zero(2), {{-1, 1}, {-1, 1}}, {500, 0.1, 1e-16});
  CHECK((r.x - target).norm() < 1e-4);
  CHECK(r.value <= f(Vector::Zero(2)));
}

TEST_CASE("stays within the bounds when the minimum lies outside") {
  auto f = [](const Vector& x) { return x(0) + x(1); };
  const Bounds b{{-1, 1}, {-2, 2}};
  const auto r = nelder_mead_minimize(f, Vector::Zero(2), b);
  CHECK(r.x(0) >= -1);
  CHECK(r.x(1) >= -2);
  CHECK(r.value <= 0.0);
  CHECK(r.iterations <= 200);
}

TEST_CASE("never returns worse than the start") {
  RandomStream rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    auto f = [](const Vector& x) { return std::sin(5 * x(0)) * std::cos(3 * x(1)); };
    Vector start(2);
    start << rng.uniform(), rng.uniform();
    const auto r = nelder_mead_minimize(f, start, {{0, 1}, {0, 1}});
    CHECK(r.value <= f(start));
    CHECK(r.value == f(r.x));
  }
}
