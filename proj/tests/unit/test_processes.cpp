#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "stpbo/errors.hpp"
#include "stpbo/processes.hpp"

using namespace stpbo;

namespace {

InputPoint p1(double x) {
  InputPoint p(1);
  p(0) = x;
  return p;
}

KernelSpec se(double bandwidth) { return {KernelFamily::SquaredExponentialIsotropic, bandwidth}; }

Dataset random_dataset(std::size_t n, std::size_t d, RandomStream& rng) {
  Dataset data;
  data.outputs.resize(static_cast<long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    InputPoint x(static_cast<long>(d));
    for (long j = 0; j < x.size(); ++j) x(j) = rng.uniform();
    data.inputs.push_back(x);
    data.outputs(static_cast<long>(i)) = rng.normal();
  }
  return data;
}

std::vector<InputPoint> random_points(std::size_t n, std::size_t d, RandomStream& rng) {
  return random_dataset(n, d, rng).inputs;
}

}  // namespace

TEST_CASE("ProcessModel and Dataset validation") {
  CHECK_THROWS_AS(ProcessModel::student_t(2.0, se(1)).validate(), InvalidParameter);
  CHECK_THROWS_AS(ProcessModel::gaussian(se(-1)).validate(), InvalidParameter);
  CHECK_NOTHROW(ProcessModel::student_t(2.5, se(1)).validate());

  Dataset d;
  d.inputs = {p1(0), p1(1)};
  d.outputs = Vector::Zero(3);
  CHECK_THROWS_AS(d.validate(), DimensionMismatch);
  d.outputs = Vector::Zero(2);
  d.outputs(1) = NAN;
  CHECK_THROWS_AS(d.validate(), InvalidParameter);

  Dataset empty;
  std::vector<InputPoint> q{p1(0)};
  CHECK_THROWS_AS(gp_posterior(ProcessModel::gaussian(se(1)), empty, q), EmptyDataset);
  CHECK_THROWS_AS(stp_posterior(ProcessModel::gaussian(se(1)), d, q), InvalidParameter);
}

TEST_CASE("GP posterior interpolates observations") {
  Dataset data;
  data.inputs = {p1(0.1), p1(0.5), p1(0.9)};
  data.outputs = Vector(3);
  data.outputs << 1.0, -2.0, 0.5;
  const auto model = ProcessModel::gaussian(se(0.3));
  std::vector<InputPoint> q{p1(0.5)};
  const auto post = gp_posterior(model, data, q);
  CHECK(post.mu(0) == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(post.shape(0, 0) <= 1e-8);
  CHECK(post.scale_factor == 1.0);

  const auto m = predictive_marginals(post);
  CHECK(m[0].scale <= std::sqrt(1e-8));

  const auto none = gp_posterior(model, data, std::vector<InputPoint>{});
  CHECK(none.mu.size() == 0);
  CHECK(none.shape.size() == 0);
}

TEST_CASE("GP posterior matches a hand-assembled 2x2 computation") {
  Dataset data;
  data.inputs = {p1(0.0), p1(0.4)};
  data.outputs = Vector(2);
  data.outputs << 0.7, -0.3;
  const KernelSpec k = se(0.5);
  const auto model = ProcessModel::gaussian(k);
  const ConditionedProcess cond(model, data);
  const double jitter = cond.factor().jitter();

  const double k01 = std::exp(-0.16 / (2 * 0.25));
  Matrix kxx(2, 2);
  kxx << 1 + jitter, k01, k01, 1 + jitter;
  const auto inv = oracle::gauss_jordan_inverse(kxx);
  const double xq = 0.25;
  const double kq[2] = {std::exp(-xq * xq / 0.5), std::exp(-(xq - 0.4) * (xq - 0.4) / 0.5)};
  double mu = 0, var = 1;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mu += kq[i] * inv[i][j] * data.outputs(j);
      var -= kq[i] * inv[i][j] * kq[j];
    }
  }
  const auto post = gp_posterior(model, data, std::vector<InputPoint>{p1(xq)});
  CHECK(post.mu(0) == doctest::Approx(mu).epsilon(1e-10));
  CHECK(post.shape(0, 0) == doctest::Approx(var).epsilon(1e-8));
}

TEST_CASE("STP scale factor examples") {
  Dataset data;
  data.inputs = {p1(0.3)};
  data.outputs = Vector::Ones(1);
  const auto model = ProcessModel::student_t(5.0, se(0.2));
  const std::vector<InputPoint> q{p1(0.0), p1(0.7)};
  const auto base = stp_posterior(model, data, q);
  // y^2 / k(x,x) = 1 up to the jitter
  CHECK(base.scale_factor == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(base.nu_hat == 6.0);

  Dataset scaled = data;
  scaled.outputs *= 10.0;
  const auto big = stp_posterior(model, scaled, q);
  CHECK(big.scale_factor > base.scale_factor);
  CHECK(big.mu(0) == doctest::Approx(10 * base.mu(0)).epsilon(1e-12));
  CHECK(big.mu(1) == doctest::Approx(10 * base.mu(1)).epsilon(1e-12));
}

TEST_CASE("STP shape uses the posterior or prior degrees of freedom") {
  RandomStream rng(7);
  const Dataset data = random_dataset(6, 1, rng);
  const std::vector<InputPoint> q = random_points(4, 1, rng);
  auto model = ProcessModel::student_t(4.0, se(0.3));
  const auto gp = gp_posterior(ProcessModel::gaussian(se(0.3)), data, q);
  const auto post = stp_posterior(model, data, q);
  const double nu_hat = 10.0;
  CHECK(post.nu_hat == nu_hat);
  CHECK((post.shape - (nu_hat - 2) / nu_hat * post.scale_factor * gp.shape).norm() <= 1e-12);

  model.shape_convention = ShapeConvention::PriorNu;
  const auto prior_conv = stp_posterior(model, data, q);
  CHECK((prior_conv.shape - 0.5 * post.scale_factor * gp.shape).norm() <= 1e-12);
}

TEST_CASE("STP approaches the GP as nu grows") {
  RandomStream rng(13);
  for (int rep = 0; rep < 50; ++rep) {
    Dataset data = random_dataset(2 + rep % 10, 1, rng);
    const auto q = random_points(5, 1, rng);
    const KernelSpec k = se(0.1 + rng.uniform());
    // outputs drawn from the prior keep y^T K^{-1} y near |D|
    const Matrix kxx = kernel_matrix(k, data.inputs, data.inputs);
    data.outputs = sample_mvg(Vector::Zero(kxx.rows()), SpdMatrix(kxx), rng);
    const auto gp = gp_posterior(ProcessModel::gaussian(k), data, q);
    const auto stp = stp_posterior(ProcessModel::student_t(1e6, k), data, q);
    const Matrix cov = stp.shape * (stp.nu_hat / (stp.nu_hat - 2));
    for (long i = 0; i < cov.rows(); ++i) {
      CHECK(std::abs(cov(i, i) - gp.shape(i, i)) <= 1e-3 * std::max(gp.shape(i, i), 1e-8));
    }
    const auto gm = predictive_marginals(gp);
    const auto sm = predictive_marginals(stp);
    for (std::size_t i = 0; i < gm.size(); ++i) {
      CHECK(std::abs(sm[i].mu - gm[i].mu) <= 1e-3 * (1 + std::abs(gm[i].mu)));
      CHECK(std::abs(sm[i].standard_deviation() - gm[i].scale) <= 1e-3 * std::max(gm[i].scale, 1e-4));
    }
  }
}

TEST_CASE("GP and STP posterior means coincide") {
  RandomStream rng(17);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t d = 1 + rep % 3;
    const Dataset data = random_dataset(1 + rep % 15, d, rng);
    const auto q = random_points(7, d, rng);
    const KernelSpec k = se(0.05 + rng.uniform());
    const auto gp = gp_posterior(ProcessModel::gaussian(k), data, q);
    const auto stp = stp_posterior(ProcessModel::student_t(2.5 + 20 * rng.uniform(), k), data, q);
    CHECK((gp.mu - stp.mu).lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("scaling outputs scales the Mahalanobis term quadratically") {
  RandomStream rng(19);
  for (int rep = 0; rep < 50; ++rep) {
    Dataset data = random_dataset(2 + rep % 8, 2, rng);
    const auto model = ProcessModel::student_t(5.0, se(0.4));
    const ConditionedProcess a(model, data);
    const double c = 1.01 + 5 * rng.uniform();
    data.outputs *= c;
    const ConditionedProcess b(model, data);
    CHECK(b.mahalanobis() == doctest::Approx(c * c * a.mahalanobis()).epsilon(1e-9));
    CHECK(b.scale_factor() > a.scale_factor());
  }
}

TEST_CASE("posterior shape diagonal never exceeds the prior bound") {
  RandomStream rng(23);
  for (int rep = 0; rep < 50; ++rep) {
    const Dataset data = random_dataset(1 + rep % 12, 2, rng);
    const auto q = random_points(10, 2, rng);
    const auto post = stp_posterior(ProcessModel::student_t(3.0 + rep, se(0.3)), data, q);
    const double bound = post.scale_factor * (post.nu_hat - 2) / post.nu_hat;
    for (long i = 0; i < post.shape.rows(); ++i) CHECK(post.shape(i, i) <= bound * (1 + 1e-12));
    CHECK(post.nu_hat > 2);
    CHECK(post.scale_factor > 0);
  }
}

TEST_CASE("marginals agree with the diagonal of the joint prediction") {
  RandomStream rng(29);
  const Dataset data = random_dataset(8, 2, rng);
  const auto q = random_points(12, 2, rng);
  for (const auto& model : {ProcessModel::gaussian(se(0.3)), ProcessModel::student_t(5.0, se(0.3))}) {
    const ConditionedProcess cond(model, data);
    const auto joint = predictive_marginals(cond.predict(q));
    const auto diag = cond.marginals(q);
    REQUIRE(joint.size() == diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
      CHECK(joint[i].family == model.family);
      CHECK(diag[i].mu == doctest::Approx(joint[i].mu).epsilon(1e-12));
      CHECK(diag[i].scale == doctest::Approx(joint[i].scale).epsilon(1e-9));
      CHECK(diag[i].nu == joint[i].nu);
    }
  }
}

TEST_CASE("predictive_marginals takes the square root of the shape diagonal") {
  PosteriorPredictive p;
  p.family = Family::StudentT;
  p.mu = Vector::Zero(2);
  p.shape = Matrix::Zero(2, 2);
  p.shape(0, 0) = 4.0;
  p.nu_hat = 7.0;
  const auto m = predictive_marginals(p);
  CHECK(m[0].scale == 2.0);
  CHECK(m[0].nu == 7.0);
  CHECK(m[1].scale == kMinMarginalScale);
}

TEST_CASE("chi-squared expectation of the Mahalanobis term") {
  RandomStream rng(31);
  const Dataset layout = random_dataset(8, 1, rng);
  const KernelSpec k = se(0.2);
  const Matrix kxx = kernel_matrix(k, layout.inputs, layout.inputs);
  const auto model = ProcessModel::student_t(5.0, k);
  const int draws = 10000;
  const Matrix ys = sample_mvg_rows(Vector::Zero(8), SpdMatrix(kxx), draws, rng);
  double sum_q = 0, sum_q2 = 0, sum_s = 0, sum_s2 = 0;
  for (int r = 0; r < draws; ++r) {
    Dataset data = layout;
    data.outputs = ys.row(r).transpose();
    const ConditionedProcess cond(model, data);
    sum_q += cond.mahalanobis();
    sum_q2 += cond.mahalanobis() * cond.mahalanobis();
    sum_s += cond.scale_factor();
    sum_s2 += cond.scale_factor() * cond.scale_factor();
  }
  const double mean_q = sum_q / draws;
  const double se_q = std::sqrt((sum_q2 / draws - mean_q * mean_q) / draws);
  CHECK(std::abs(mean_q - 8.0) <= 3 * se_q);
  const double mean_s = sum_s / draws;
  const double se_s = std::sqrt((sum_s2 / draws - mean_s * mean_s) / draws);
  CHECK(std::abs(mean_s - 1.0) <= 3 * se_s);
}

TEST_CASE("prior path sampling") {
  RandomStream rng(37);
  const std::vector<InputPoint> grid{p1(0.2)};
  CHECK(sample_prior_paths(ProcessModel::gaussian(se(1)), grid, 0, rng).rows() == 0);
  const int n = 100000;
  const Matrix g = sample_prior_paths(ProcessModel::gaussian(se(1)), grid, n, rng);
  CHECK(g.squaredNorm() / n == doctest::Approx(1.0).epsilon(0.05));
  const Matrix t = sample_prior_paths(ProcessModel::student_t(5.0, se(1)), grid, n, rng);
  CHECK(t.squaredNorm() / n == doctest::Approx(1.0).epsilon(0.10));

  std::vector<InputPoint> line;
  for (int i = 0; i < 200; ++i) line.push_back(p1(i / 199.0));
  const Matrix paths = sample_prior_paths(ProcessModel::student_t(5.0, se(0.1)), line, 300, rng);
  CHECK(paths.rows() == 300);
  CHECK(paths.cols() == 200);
}

TEST_CASE("posterior path sampling") {
  Dataset data;
  data.inputs = {p1(0.2), p1(0.6)};
  data.outputs = Vector(2);
  data.outputs << 1.5, -0.5;
  const std::vector<InputPoint> grid{p1(0.2), p1(0.4), p1(0.6)};
  for (const auto& model : {ProcessModel::gaussian(se(0.2)), ProcessModel::student_t(5.0, se(0.2))}) {
    RandomStream a(41), b(41);
    const Matrix da = sample_posterior_paths(model, data, grid, 500, a);
    const Matrix db = sample_posterior_paths(model, data, grid, 500, b);
    CHECK(da == db);
    for (long r = 0; r < da.rows(); ++r) {
      CHECK(std::abs(da(r, 0) - 1.5) <= 1e-4);
      CHECK(std::abs(da(r, 2) + 0.5) <= 1e-4);
    }
  }
  RandomStream rng(43);
  const std::vector<InputPoint> one{p1(0.4)};
  const auto model = ProcessModel::gaussian(se(0.2));
  const double var = gp_posterior(model, data, one).shape(0, 0);
  const double mu = gp_posterior(model, data, one).mu(0);
  const int n = 100000;
  const Matrix d = sample_posterior_paths(model, data, one, n, rng);
  const double emp = (d.array() - mu).square().sum() / n;
  CHECK(emp == doctest::Approx(var).epsilon(0.05));
}
