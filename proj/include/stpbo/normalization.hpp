#pragma once

#include <vector>

#include "stpbo/processes.hpp"

namespace stpbo {

/// Stds below this are treated as degenerate: the dimension is centered but
/// left unscaled.
inline constexpr double kVarianceFloor = 1e-12;

/// Affine map of inputs and outputs to zero mean and unit (population)
/// variance per dimension.
struct NormalizationTransform {
  Vector input_means;
  Vector input_stds;
  double output_mean = 0.0;
  double output_std = 1.0;
  bool degenerate_output = false;
  std::vector<bool> degenerate_inputs;

  InputPoint apply_input(const InputPoint& x) const;
  InputPoint invert_input(const InputPoint& z) const;
  double apply_output(double y) const;
  double invert_output(double z) const;

  Dataset apply(const Dataset& data) const;
  Dataset invert(const Dataset& data) const;
};

/// Needs at least two observations. Constant outputs engage the floor and set
/// degenerate_output (logged as a warning) instead of failing.
NormalizationTransform fit_normalization(const Dataset& data);

}  // namespace stpbo
