#pragma once

#include <vector>

#include "stpbo/processes.hpp"

namespace stpbo {

/// log N(y; 0, K).
double gp_log_marginal_likelihood(const Dataset& data, const KernelSpec& kernel);

/// log T(y; 0, (nu - 2) / nu K, nu), evaluated from the factor of K.
double stp_log_marginal_likelihood(const Dataset& data, const KernelSpec& kernel, double nu);

/// Each process is scored by its own likelihood.
double log_marginal_likelihood(const Dataset& data, const ProcessModel& model);

/// Multi-stage grid over log10(bandwidth). Stage 1 spans [log10_min,
/// log10_max]; each later stage re-grids between the previous argmax's two
/// neighbors (clamped at the range ends).
struct BandwidthGrid {
  double log10_min = -3.0;
  double log10_max = 3.0;
  std::size_t points = 11;
  std::size_t stages = 2;

  void validate() const;
};

struct BandwidthStage {
  std::vector<double> log10_bandwidths;
  std::vector<double> log_likelihoods;
  std::size_t argmax = 0;
};

struct BandwidthSelection {
  double bandwidth = 1.0;
  double log_likelihood = 0.0;
  std::vector<BandwidthStage> stages;
};

/// Ties go to the smaller bandwidth. Likelihood errors propagate.
BandwidthSelection select_bandwidth_detailed(const Dataset& data, const ProcessModel& model,
                                             const BandwidthGrid& grid = {});
double select_bandwidth(const Dataset& data, const ProcessModel& model,
                        const BandwidthGrid& grid = {});

/// Picks nu from the candidates (all must exceed min_nu >= 2) by STP likelihood
/// at the model's current bandwidth.
double select_nu(const Dataset& data, const ProcessModel& model, const std::vector<double>& candidates,
                 double min_nu = 2.0);

}  // namespace stpbo
