#pragma once

#include <optional>
#include <span>
#include <vector>

#include "stpbo/distributions.hpp"
#include "stpbo/kernels.hpp"
#include "stpbo/linalg.hpp"
#include "stpbo/random.hpp"

namespace stpbo {

/// Which degrees of freedom scale the posterior shape-to-covariance fraction
/// (nu' - 2) / nu'. PosteriorNu uses nu + |D| so repeated conditioning keeps
/// covariance semantics; PriorNu uses the prior nu literally.
enum class ShapeConvention { PosteriorNu, PriorNu };

/// Zero-mean surrogate prior.
struct ProcessModel {
  Family family = Family::Gaussian;
  double nu = 0.0;  // StudentT only; > 2
  KernelSpec kernel;
  ShapeConvention shape_convention = ShapeConvention::PosteriorNu;

  static ProcessModel gaussian(KernelSpec kernel);
  static ProcessModel student_t(double nu, KernelSpec kernel);

  /// Throws InvalidParameter on a bad nu or kernel.
  void validate() const;
};

/// Observed inputs and outputs.
struct Dataset {
  std::vector<InputPoint> inputs;
  Vector outputs;

  std::size_t size() const { return inputs.size(); }
  bool empty() const { return inputs.empty(); }
  /// Throws DimensionMismatch / InvalidParameter on inconsistent or non-finite data.
  void validate() const;
};

struct PosteriorPredictive {
  Family family = Family::Gaussian;
  Vector mu;
  Matrix shape;  // positive semidefinite up to jitter
  double nu_hat = 0.0;
  double scale_factor = 1.0;
};

/// Prior conditioned on a dataset. Holds the factorization of the training
/// kernel matrix plus K^{-1} y, so predictions only need cross-covariances.
class ConditionedProcess {
 public:
  ConditionedProcess(ProcessModel model, Dataset data);

  const ProcessModel& model() const { return model_; }
  const Dataset& data() const { return data_; }
  const CholeskyFactor& factor() const { return factor_; }

  /// y^T K^{-1} y.
  double mahalanobis() const { return mahalanobis_; }
  /// (nu + y^T K^{-1} y - 2) / (nu + |D| - 2); 1 for a GP.
  double scale_factor() const { return scale_factor_; }
  double nu_hat() const;

  /// Full joint predictive over the query points.
  PosteriorPredictive predict(std::span<const InputPoint> query) const;

  /// Diagonal-only prediction; cost is linear in the number of query points.
  std::vector<UnivariateMarginal> marginals(std::span<const InputPoint> query) const;
  UnivariateMarginal marginal(const InputPoint& x) const;

 private:
  double shape_fraction() const;
  UnivariateMarginal make_marginal(double mu, double latent_variance) const;

  ProcessModel model_;
  Dataset data_;
  CholeskyFactor factor_;
  Vector alpha_;
  double mahalanobis_ = 0.0;
  double scale_factor_ = 1.0;
};

PosteriorPredictive gp_posterior(const ProcessModel& model, const Dataset& data,
                                 std::span<const InputPoint> query);
PosteriorPredictive stp_posterior(const ProcessModel& model, const Dataset& data,
                                  std::span<const InputPoint> query);

/// Smallest reported marginal scale.
inline constexpr double kMinMarginalScale = 1e-10;

std::vector<UnivariateMarginal> predictive_marginals(const PosteriorPredictive& p);

/// One draw per row, one grid point per column.
Matrix sample_prior_paths(const ProcessModel& model, std::span<const InputPoint> grid,
                          std::size_t n_draws, RandomStream& rng);
Matrix sample_posterior_paths(const ProcessModel& model, const Dataset& data,
                              std::span<const InputPoint> grid, std::size_t n_draws,
                              RandomStream& rng);

}  // namespace stpbo
