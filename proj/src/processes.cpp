#include "stpbo/processes.hpp"

#include <cmath>
#include <string>

#include "stpbo/errors.hpp"

namespace stpbo {

ProcessModel ProcessModel::gaussian(KernelSpec kernel) {
  return {Family::Gaussian, 0.0, kernel, ShapeConvention::PosteriorNu};
}

ProcessModel ProcessModel::student_t(double nu, KernelSpec kernel) {
  return {Family::StudentT, nu, kernel, ShapeConvention::PosteriorNu};
}

void ProcessModel::validate() const {
  kernel.validate();
  if (family == Family::StudentT && (!(nu > 2.0) || !std::isfinite(nu))) {
    throw InvalidParameter("Student-T process needs finite nu > 2, got " + std::to_string(nu));
  }
}

void Dataset::validate() const {
  if (inputs.size() != static_cast<std::size_t>(outputs.size())) {
    throw DimensionMismatch("dataset has " + std::to_string(inputs.size()) + " inputs but " +
                            std::to_string(outputs.size()) + " outputs");
  }
  for (const auto& x : inputs) {
    if (x.size() != inputs.front().size()) throw DimensionMismatch("dataset inputs differ in dimension");
    if (!x.allFinite()) throw InvalidParameter("dataset input is not finite");
  }
  if (!outputs.allFinite()) throw InvalidParameter("dataset output is not finite");
}

namespace {

CholeskyFactor factor_training(const ProcessModel& model, const Dataset& data) {
  model.validate();
  data.validate();
  if (data.empty()) throw EmptyDataset("cannot condition a process on an empty dataset");
  return cholesky(SpdMatrix(kernel_matrix(model.kernel, data.inputs, data.inputs)));
}

void check_query(const Dataset& data, std::span<const InputPoint> query) {
  const auto dim = data.inputs.front().size();
  for (const auto& q : query) {
    if (q.size() != dim) {
      throw DimensionMismatch("query point has dimension " + std::to_string(q.size()) +
                              ", data has " + std::to_string(dim));
    }
  }
}

}  // namespace

ConditionedProcess::ConditionedProcess(ProcessModel model, Dataset data)
    : model_(std::move(model)), data_(std::move(data)), factor_(factor_training(model_, data_)) {
  alpha_ = solve(factor_, data_.outputs);
  mahalanobis_ = quadratic_form(factor_, data_.outputs);
  if (model_.family == Family::StudentT) {
    const double n = static_cast<double>(data_.size());
    scale_factor_ = (model_.nu + mahalanobis_ - 2.0) / (model_.nu + n - 2.0);
  }
}

double ConditionedProcess::nu_hat() const {
  if (model_.family == Family::Gaussian) return 0.0;
  return model_.nu + static_cast<double>(data_.size());
}

double ConditionedProcess::shape_fraction() const {
  if (model_.family == Family::Gaussian) return 1.0;
  const double nu = model_.shape_convention == ShapeConvention::PosteriorNu ? nu_hat() : model_.nu;
  return (nu - 2.0) / nu;
}

UnivariateMarginal ConditionedProcess::make_marginal(double mu, double latent_variance) const {
  const double shape = shape_fraction() * scale_factor_ * std::max(latent_variance, 0.0);
  const double scale = std::max(std::sqrt(shape), kMinMarginalScale);
  if (model_.family == Family::Gaussian) return UnivariateMarginal::gaussian(mu, scale);
  return UnivariateMarginal::student_t(mu, scale, nu_hat());
}

PosteriorPredictive ConditionedProcess::predict(std::span<const InputPoint> query) const {
  check_query(data_, query);
  PosteriorPredictive out;
  out.family = model_.family;
  out.nu_hat = nu_hat();
  out.scale_factor = scale_factor_;
  const auto m = static_cast<Eigen::Index>(query.size());
  if (m == 0) {
    out.mu = Vector(0);
    out.shape = Matrix(0, 0);
    return out;
  }
  const Matrix cross = kernel_matrix(model_.kernel, data_.inputs, query);  // n x m
  out.mu = cross.transpose() * alpha_;
  const Matrix v = solve_lower(factor_, cross);
  Matrix latent = kernel_matrix(model_.kernel, query, query) - v.transpose() * v;
  latent = 0.5 * (latent + latent.transpose());
  out.shape = shape_fraction() * scale_factor_ * latent;
  return out;
}

std::vector<UnivariateMarginal> ConditionedProcess::marginals(
    std::span<const InputPoint> query) const {
  check_query(data_, query);
  std::vector<UnivariateMarginal> out;
  out.reserve(query.size());
  if (query.empty()) return out;
  const Matrix cross = kernel_matrix(model_.kernel, data_.inputs, query);
  const Vector mu = cross.transpose() * alpha_;
  const Matrix v = solve_lower(factor_, cross);
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const auto& x = query[static_cast<std::size_t>(j)];
    const double prior = kernel_eval(model_.kernel, x, x);
    out.push_back(make_marginal(mu(j), prior - v.col(j).squaredNorm()));
  }
  return out;
}

UnivariateMarginal ConditionedProcess::marginal(const InputPoint& x) const {
  return marginals(std::span<const InputPoint>(&x, 1)).front();
}

PosteriorPredictive gp_posterior(const ProcessModel& model, const Dataset& data,
                                 std::span<const InputPoint> query) {
  if (model.family != Family::Gaussian) throw InvalidParameter("gp_posterior needs a Gaussian model");
  return ConditionedProcess(model, data).predict(query);
}

PosteriorPredictive stp_posterior(const ProcessModel& model, const Dataset& data,
                                  std::span<const InputPoint> query) {
  if (model.family != Family::StudentT) throw InvalidParameter("stp_posterior needs a Student-T model");
  return ConditionedProcess(model, data).predict(query);
}

std::vector<UnivariateMarginal> predictive_marginals(const PosteriorPredictive& p) {
  std::vector<UnivariateMarginal> out;
  out.reserve(static_cast<std::size_t>(p.mu.size()));
  for (Eigen::Index i = 0; i < p.mu.size(); ++i) {
    const double scale = std::max(std::sqrt(std::max(p.shape(i, i), 0.0)), kMinMarginalScale);
    if (p.family == Family::Gaussian) {
      out.push_back(UnivariateMarginal::gaussian(p.mu(i), scale));
    } else {
      out.push_back(UnivariateMarginal::student_t(p.mu(i), scale, p.nu_hat));
    }
  }
  return out;
}

namespace {

Matrix draw_paths(Family family, const Vector& mu, Matrix shape, double nu, std::size_t n_draws,
                  RandomStream& rng) {
  constexpr double kDiagonalFloor = kMinMarginalScale * kMinMarginalScale;
  for (Eigen::Index i = 0; i < shape.rows(); ++i) shape(i, i) = std::max(shape(i, i), kDiagonalFloor);
  SpdMatrix spd(std::move(shape));
  if (family == Family::Gaussian) return sample_mvg_rows(mu, spd, n_draws, rng);
  return sample_mvt_rows(MvtParams{mu, std::move(spd), nu}, n_draws, rng);
}

}  // namespace

Matrix sample_prior_paths(const ProcessModel& model, std::span<const InputPoint> grid,
                          std::size_t n_draws, RandomStream& rng) {
  model.validate();
  if (grid.empty()) throw EmptyDataset("sample_prior_paths needs a nonempty grid");
  const auto m = static_cast<Eigen::Index>(grid.size());
  if (n_draws == 0) return Matrix(0, m);
  Matrix k = kernel_matrix(model.kernel, grid, grid);
  if (model.family == Family::StudentT) k *= (model.nu - 2.0) / model.nu;
  return draw_paths(model.family, Vector::Zero(m), std::move(k), model.nu, n_draws, rng);
}

Matrix sample_posterior_paths(const ProcessModel& model, const Dataset& data,
                              std::span<const InputPoint> grid, std::size_t n_draws,
                              RandomStream& rng) {
  if (grid.empty()) throw EmptyDataset("sample_posterior_paths needs a nonempty grid");
  const ConditionedProcess conditioned(model, data);
  if (n_draws == 0) return Matrix(0, static_cast<Eigen::Index>(grid.size()));
  PosteriorPredictive post = conditioned.predict(grid);
  return draw_paths(post.family, post.mu, std::move(post.shape), post.nu_hat, n_draws, rng);
}

}  // namespace stpbo
