#include <cmath>

#include "doctest.h"
#include "stpbo/errors.hpp"
#include "stpbo/objectives.hpp"

using namespace stpbo;

namespace {

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// Written out directly for cross-checking.
double camel(double x, double y) {
  return 4 * x * x - 2.1 * std::pow(x, 4) + std::pow(x, 6) / 3 + x * y - 4 * y * y + 4 * std::pow(y, 4);
}

}  // namespace

TEST_CASE("Rosenbrock values") {
  CHECK(rosenbrock(v2(1, 1)) == 0.0);
  CHECK(rosenbrock(v2(0, 0)) == 1.0);
  CHECK(rosenbrock(v2(-1, 2)) == 104.0);
  CHECK_THROWS_AS(rosenbrock(v2(3.5, 0)), OutOfBounds);
  CHECK_THROWS_AS(rosenbrock(Vector::Zero(3)), DimensionMismatch);
}

TEST_CASE("six-hump camel values") {
  CHECK(std::abs(six_hump_camel(v2(0.0898, -0.7162)) - (-1.0316)) <= 5e-4);
  CHECK(six_hump_camel(v2(0.0898, -0.7126)) == doctest::Approx(-1.0316).epsilon(1e-4));
  CHECK(six_hump_camel(v2(0, 0)) == 0.0);
  CHECK(six_hump_camel(v2(0.5, 0.5)) == six_hump_camel(v2(-0.5, -0.5)));
  CHECK(six_hump_camel(v2(0.5, 0.5)) == doctest::Approx(camel(0.5, 0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(six_hump_camel(v2(0, 2.5)), OutOfBounds);
  CHECK(kSixHumpCamelMinimum == doctest::Approx(-1.0316).epsilon(1e-4));
}

TEST_CASE("Rosenbrock is nonnegative with its only zero at (1,1)") {
  double best = INFINITY;
  Vector arg;
  for (int i = 0; i <= 600; ++i) {
    for (int j = 0; j <= 600; ++j) {
      const Vector x = v2(-3 + 0.01 * i, -3 + 0.01 * j);
      const double f = rosenbrock(x);
      CHECK_FALSE(f < 0.0);
      if (f < best) {
        best = f;
        arg = x;
      }
      if (f < rosenbrock(v2(1, 1)) + 1e-12) CHECK((x - v2(1, 1)).norm() < 0.02);
    }
  }
  CHECK((arg - v2(1, 1)).norm() < 1e-9);
}

TEST_CASE("six-hump camel's two best grid values form the symmetric pair") {
  std::vector<std::pair<double, Vector>> values;
  for (int i = 0; i < 600; ++i) {
    for (int j = 0; j < 400; ++j) {
      const Vector x = v2(-3 + 6.0 * i / 599, -2 + 4.0 * j / 399);
      values.emplace_back(six_hump_camel(x), x);
    }
  }
  std::partial_sort(values.begin(), values.begin() + 2, values.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(values[k].first - (-1.0316)) <= 1e-3);
    const Vector& x = values[k].second;
    const double d = std::min((x - v2(0.0898, -0.7126)).norm(), (x + v2(0.0898, -0.7126)).norm());
    CHECK(d < 0.02);
  }
  CHECK((values[0].second + values[1].second).norm() < 0.03);
}

TEST_CASE("penalty wrapping") {
  const PenaltySpec spec;
  CHECK(penalty_wrap(Value{120000}, spec) == 120000);
  CHECK(penalty_wrap(Violation{0.25}, spec) == 225000);
  CHECK(penalty_wrap(NonPhysical{}, spec) == 300000);
  CHECK(penalty_wrap(Crash{"boom"}, spec) == 400000);
  CHECK_THROWS_AS(penalty_wrap(Violation{-0.1}, spec), InvalidParameter);
  double prev = -1;
  for (double xi = 0; xi < 5; xi += 0.1) {
    const double v = penalty_wrap(Violation{xi}, spec);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS((PenaltySpec{300000, 300000, 400000}.validate()), InvalidParameter);
  CHECK_THROWS_AS((PenaltySpec{0, 300000, 400000}.validate()), InvalidParameter);
  CHECK_THROWS_AS((PenaltySpec{1, 500000, 400000}.validate()), InvalidParameter);
}

TEST_CASE("bounds helpers") {
  CHECK_THROWS_AS(validate_bounds({}), InvalidParameter);
  CHECK_THROWS_AS(validate_bounds({{1, 1}}), InvalidParameter);
  const Bounds b{{-1, 1}, {0, 2}};
  CHECK(within_bounds(b, v2(0, 2)));
  CHECK_FALSE(within_bounds(b, v2(0, 2.1)));
  CHECK(clamp_to_bounds(b, v2(-5, 5)) == v2(-1, 2));
}

TEST_CASE("objective handles") {
  const auto r = ObjectiveHandle::rosenbrock();
  CHECK(r.kind() == ObjectiveKind::Rosenbrock);
  CHECK(r.dimension() == 2);
  CHECK(r.known_optimum() == 0.0);
  CHECK(r.evaluate(v2(1, 1)) == 0.0);

  const auto c = ObjectiveHandle::six_hump_camel();
  CHECK(c.bounds()[0].low == -3);
  CHECK(c.bounds()[1].high == 2);
  CHECK(c.known_optimum() == kSixHumpCamelMinimum);
  // out-of-domain input becomes a crash outcome
  CHECK(std::holds_alternative<Crash>(c.evaluate_outcome(v2(0, 5))));
  CHECK(c.evaluate(v2(0, 5)) == 400000);

  const auto nan = ObjectiveHandle::custom("nan", {{0, 1}}, [](const Vector&) -> EvaluationOutcome {
    return Value{NAN};
  });
  CHECK(nan.evaluate(Vector::Zero(1)) == 400000);

  const auto thrower = ObjectiveHandle::custom("throws", {{0, 1}}, [](const Vector&) -> EvaluationOutcome {
    throw std::runtime_error("simulator failed");
  });
  CHECK(std::get<Crash>(thrower.evaluate_outcome(Vector::Zero(1))).reason.find("simulator failed") !=
        std::string::npos);

  const auto narrowed = c.restricted_to({{-1, 1}, {-1, 1}});
  CHECK(narrowed.bounds()[0].low == -1);
  CHECK(narrowed.with_known_optimum(std::nullopt).known_optimum() == std::nullopt);
  CHECK_THROWS_AS(c.restricted_to({{-1, 1}}), DimensionMismatch);
}
