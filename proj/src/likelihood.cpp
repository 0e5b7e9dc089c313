#include "stpbo/likelihood.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "stpbo/distributions.hpp"
#include "stpbo/errors.hpp"

namespace stpbo {

namespace {

Matrix prior_matrix(const Dataset& data, const KernelSpec& kernel) {
  data.validate();
  if (data.empty()) throw EmptyDataset("marginal likelihood needs at least one observation");
  return kernel_matrix(kernel, data.inputs, data.inputs);
}

}  // namespace

double gp_log_marginal_likelihood(const Dataset& data, const KernelSpec& kernel) {
  const Matrix k = prior_matrix(data, kernel);
  return mvg_logpdf(data.outputs, Vector::Zero(k.rows()), SpdMatrix(k));
}

double stp_log_marginal_likelihood(const Dataset& data, const KernelSpec& kernel, double nu) {
  if (!(nu > 2.0) || !std::isfinite(nu)) {
    throw InvalidParameter("STP marginal likelihood needs finite nu > 2, got " + std::to_string(nu));
  }
  // shape = ((nu - 2) / nu) K so the prior covariance is K
  const Matrix k = prior_matrix(data, kernel);
  const MvtParams params{Vector::Zero(k.rows()), SpdMatrix((nu - 2.0) / nu * k), nu};
  return mvt_logpdf(data.outputs, params);
}

double log_marginal_likelihood(const Dataset& data, const ProcessModel& model) {
  if (model.family == Family::Gaussian) return gp_log_marginal_likelihood(data, model.kernel);
  return stp_log_marginal_likelihood(data, model.kernel, model.nu);
}

void BandwidthGrid::validate() const {
  if (!(log10_min < log10_max)) throw InvalidParameter("bandwidth grid needs log10_min < log10_max");
  if (points < 3) throw InvalidParameter("bandwidth grid needs at least 3 points per stage");
  if (stages < 1) throw InvalidParameter("bandwidth grid needs at least one stage");
}

namespace {

BandwidthStage evaluate_stage(const Dataset& data, ProcessModel model, double lo, double hi,
                              std::size_t points) {
  BandwidthStage stage;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    const double log10_bw = i + 1 == points ? hi : lo + t * (hi - lo);
    model.kernel.bandwidth = std::pow(10.0, log10_bw);
    const double ll = log_marginal_likelihood(data, model);
    stage.log10_bandwidths.push_back(log10_bw);
    stage.log_likelihoods.push_back(ll);
    if (ll > best) {
      best = ll;
      stage.argmax = i;
    }
  }
  return stage;
}

}  // namespace

BandwidthSelection select_bandwidth_detailed(const Dataset& data, const ProcessModel& model,
                                             const BandwidthGrid& grid) {
  grid.validate();
  model.validate();
  if (data.size() < 2) throw EmptyDataset("bandwidth selection needs at least two observations");

  BandwidthSelection out;
  double lo = grid.log10_min;
  double hi = grid.log10_max;
  double best_log10 = 0.0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < grid.stages; ++s) {
    BandwidthStage stage = evaluate_stage(data, model, lo, hi, grid.points);
    const std::size_t a = stage.argmax;
    // A later stage only replaces the incumbent on strict improvement.
    if (stage.log_likelihoods[a] > best_ll) {
      best_ll = stage.log_likelihoods[a];
      best_log10 = stage.log10_bandwidths[a];
    }
    const auto& xs = stage.log10_bandwidths;
    const double next_lo = xs[a == 0 ? 0 : a - 1];
    const double next_hi = xs[a + 1 == xs.size() ? a : a + 1];
    out.stages.push_back(std::move(stage));
    lo = std::max(next_lo, grid.log10_min);
    hi = std::min(next_hi, grid.log10_max);
  }
  out.bandwidth = std::pow(10.0, best_log10);
  out.log_likelihood = best_ll;
  return out;
}

double select_bandwidth(const Dataset& data, const ProcessModel& model, const BandwidthGrid& grid) {
  return select_bandwidth_detailed(data, model, grid).bandwidth;
}

double select_nu(const Dataset& data, const ProcessModel& model, const std::vector<double>& candidates,
                 double min_nu) {
  if (candidates.empty()) throw InvalidParameter("select_nu needs at least one candidate");
  if (!(min_nu >= 2.0)) throw InvalidParameter("select_nu constraint must be at least 2");
  double best_nu = 0.0;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (double nu : candidates) {
    if (!(nu > min_nu)) {
      throw InvalidParameter("nu candidate " + std::to_string(nu) + " violates nu > " +
                             std::to_string(min_nu));
    }
    const double ll = stp_log_marginal_likelihood(data, model.kernel, nu);
    if (ll > best_ll) {
      best_ll = ll;
      best_nu = nu;
    }
  }
  return best_nu;
}

}  // namespace stpbo
