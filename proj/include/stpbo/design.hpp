#pragma once

#include <vector>

#include "stpbo/kernels.hpp"
#include "stpbo/objectives.hpp"
#include "stpbo/random.hpp"

namespace stpbo {

/// Latin hypercube design: each dimension is cut into n equal strata and
/// every stratum receives exactly one point, placed uniformly within it.
std::vector<InputPoint> latin_hypercube(std::size_t n, const Bounds& bounds, RandomStream& rng);

/// Tensor grid with points_per_dim evenly spaced nodes per dimension, both
/// ends included. The first dimension varies slowest.
std::vector<InputPoint> tensor_grid(const Bounds& bounds, std::size_t points_per_dim);

}  // namespace stpbo
