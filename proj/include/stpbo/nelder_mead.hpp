#pragma once

#include <functional>

#include "stpbo/objectives.hpp"

namespace stpbo {

struct NelderMeadOptions {
  std::size_t max_iterations = 200;
  /// Initial simplex edge per dimension, as a fraction of the bound width.
  double initial_step_fraction = 0.01;
  /// Stops once the simplex's value spread falls below this.
  double value_tolerance = 1e-14;
};

struct NelderMeadResult {
  Vector x;
  double value;
  std::size_t iterations;
};

/// Nelder-Mead minimization with every trial point clipped into bounds.
NelderMeadResult nelder_mead_minimize(const std::function<double(const Vector&)>& f,
                                      const Vector& start, const Bounds& bounds,
                                      const NelderMeadOptions& options = {});

}  // namespace stpbo
