#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "stpbo/acquisition.hpp"
#include "stpbo/errors.hpp"

using namespace stpbo;

namespace {

double gauss_oracle(double mu, double sigma, double y_best) {
  return oracle::ei_by_quadrature(oracle::normal_density, mu, sigma, y_best);
}

double t_oracle(double mu, double sigma, double nu, double y_best) {
  return oracle::ei_by_quadrature([nu](double t) { return oracle::t_density(t, nu); }, mu, sigma, y_best);
}

InputPoint p1(double x) {
  InputPoint p(1);
  p(0) = x;
  return p;
}

}  // namespace

TEST_CASE("incumbent is the lowest observation") {
  Dataset data;
  data.inputs = {p1(0), p1(1), p1(2)};
  data.outputs = Vector(3);
  data.outputs << 3.0, -1.0, 2.0;
  const auto inc = incumbent(data);
  CHECK(inc.y_best == -1.0);
  CHECK(inc.x_best(0) == 1.0);
  CHECK_THROWS_AS(incumbent(Dataset{}), EmptyDataset);
}

TEST_CASE("Gaussian EI examples") {
  const double y = 0.3;
  CHECK(ei_gaussian(UnivariateMarginal::gaussian(y, 1), y) == doctest::Approx(0.398942280401).epsilon(1e-10));
  CHECK(ei_gaussian(UnivariateMarginal::gaussian(y, 1), y) == doctest::Approx(gauss_oracle(y, 1, y)).epsilon(1e-10));
  CHECK(ei_gaussian(UnivariateMarginal::gaussian(y + 1, 0), y) == 0.0);
  CHECK(ei_gaussian(UnivariateMarginal::gaussian(y + 1, 1e-12), y) == 0.0);
  CHECK(ei_gaussian(UnivariateMarginal::gaussian(y - 2, 1), y) == doctest::Approx(gauss_oracle(y - 2, 1, y)).epsilon(1e-10));
  CHECK(ei_gaussian(UnivariateMarginal::gaussian(y - 2, 1), y) == doctest::Approx(2.008522).epsilon(2e-5));
  CHECK(ei_gaussian(UnivariateMarginal::gaussian(y - 2, 0), y) == 2.0);
}

TEST_CASE("Student-T EI examples") {
  const double y = -1.0;
  const auto m = UnivariateMarginal::student_t(y, 1, 5);
  CHECK(ei_student_t(m, y) == doctest::Approx(t_oracle(y, 1, 5, y)).epsilon(1e-10));
  CHECK(ei_student_t(m, y) == doctest::Approx(1.25 * oracle::t_density(0, 5)).epsilon(1e-12));
  CHECK(ei_student_t(m, y) == doctest::Approx(0.474514).epsilon(2e-5));

  for (double mu : {-3.0, -1.0, 0.0, 2.0}) {
    for (double sigma : {0.1, 1.0, 3.0}) {
      CHECK(std::abs(ei_student_t(UnivariateMarginal::student_t(mu, sigma, 1e6), 0.0) -
                     ei_gaussian(UnivariateMarginal::gaussian(mu, sigma), 0.0)) <= 1e-4);
    }
  }

  const double far_t = ei_student_t(UnivariateMarginal::student_t(y + 10, 1, 5), y);
  const double far_g = ei_gaussian(UnivariateMarginal::gaussian(y + 10, 1), y);
  CHECK(far_t > 0.0);
  CHECK(far_t > far_g);
  CHECK(far_t == doctest::Approx(t_oracle(y + 10, 1, 5, y)).epsilon(1e-6));

  CHECK_THROWS_AS(ei_student_t(UnivariateMarginal::student_t(0, 1, 1.0), 0.0), InvalidParameter);
  CHECK(ei_student_t(UnivariateMarginal::student_t(y - 2, 0, 5), y) == 2.0);
}

TEST_CASE("expected_improvement dispatches on family") {
  CHECK(expected_improvement(UnivariateMarginal::gaussian(0, 1), 0.5) ==
        ei_gaussian(UnivariateMarginal::gaussian(0, 1), 0.5));
  CHECK(expected_improvement(UnivariateMarginal::student_t(0, 1, 4), 0.5) ==
        ei_student_t(UnivariateMarginal::student_t(0, 1, 4), 0.5));
}

TEST_CASE("EI surfaces") {
  PosteriorPredictive p;
  p.family = Family::Gaussian;
  p.mu = Vector::Constant(4, 2.0);
  p.shape = Matrix::Zero(4, 4);
  for (double v : ei_surface(p, 1.0)) CHECK(v == 0.0);

  p.mu = Vector::Constant(1, 0.2);
  p.shape = Matrix::Constant(1, 1, 0.49);
  CHECK(ei_surface(p, 0.0)[0] == ei_gaussian(UnivariateMarginal::gaussian(0.2, 0.7), 0.0));

  RandomStream rng(3);
  p.family = Family::StudentT;
  p.nu_hat = 9.0;
  p.mu = Vector(5);
  p.shape = Matrix::Zero(5, 5);
  for (int i = 0; i < 5; ++i) {
    p.mu(i) = rng.normal();
    p.shape(i, i) = 0.05 + rng.uniform();
  }
  const auto surface = ei_surface(p, 0.1);
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(surface[i] - t_oracle(p.mu(i), std::sqrt(p.shape(i, i)), 9.0, 0.1)) <= 1e-6);
  }
}

TEST_CASE("EI matches quadrature on random tuples") {
  RandomStream rng(101);
  for (int rep = 0; rep < 300; ++rep) {
    const double mu = 4 * rng.normal();
    const double sigma = 0.01 + 3 * rng.uniform();
    const double nu = 2.05 + 60 * rng.uniform();
    const double y_best = 4 * rng.normal();
    CAPTURE(mu);
    CAPTURE(sigma);
    CAPTURE(nu);
    CAPTURE(y_best);
    const double g = ei_gaussian(UnivariateMarginal::gaussian(mu, sigma), y_best);
    const double t = ei_student_t(UnivariateMarginal::student_t(mu, sigma, nu), y_best);
    CHECK(g >= 0.0);
    CHECK(t >= 0.0);
    CHECK(std::abs(g - gauss_oracle(mu, sigma, y_best)) <= 1e-6);
    CHECK(std::abs(t - t_oracle(mu, sigma, nu, y_best)) <= 1e-6);
  }
}

TEST_CASE("EI increases with scale at the incumbent") {
  for (double nu : {2.5, 5.0, 30.0}) {
    double prev_g = 0, prev_t = 0;
    for (double sigma = 0.01; sigma < 10; sigma *= 1.3) {
      const double g = ei_gaussian(UnivariateMarginal::gaussian(1.0, sigma), 1.0);
      const double t = ei_student_t(UnivariateMarginal::student_t(1.0, sigma, nu), 1.0);
      CHECK(g > prev_g);
      CHECK(t > prev_t);
      prev_g = g;
      prev_t = t;
    }
  }
}

TEST_CASE("heavy tails dominate far above the incumbent") {
  for (double nu : {2.5, 3.0, 5.0, 8.0, 11.0}) {
    for (double gap : {3.0, 4.0, 6.0, 10.0}) {
      for (double sigma : {0.1, 1.0, 5.0}) {
        const double mu = 2.0 + gap * sigma;
        CHECK(ei_student_t(UnivariateMarginal::student_t(mu, sigma, nu), 2.0) >
              ei_gaussian(UnivariateMarginal::gaussian(mu, sigma), 2.0));
      }
    }
  }
}
