#pragma once

#include <vector>

#include "stpbo/distributions.hpp"
#include "stpbo/kernels.hpp"
#include "stpbo/processes.hpp"

namespace stpbo {

struct Incumbent {
  double y_best;
  InputPoint x_best;
};

/// Lowest observed output and its input. Throws EmptyDataset.
Incumbent incumbent(const Dataset& data);

/// (y_best - mu) Phi(z) + sigma phi(z), z = (y_best - mu) / sigma.
double ei_gaussian(const UnivariateMarginal& m, double y_best);

/// Student-T counterpart with the nu / (nu - 1) (1 + z^2 / nu) density
/// correction. Throws InvalidParameter for nu <= 1.
double ei_student_t(const UnivariateMarginal& m, double y_best);

/// Dispatches on the marginal's family.
double expected_improvement(const UnivariateMarginal& m, double y_best);

std::vector<double> ei_surface(const PosteriorPredictive& posterior, double y_best);

}  // namespace stpbo
