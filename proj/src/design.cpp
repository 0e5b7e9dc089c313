#include "stpbo/design.hpp"

#include <numeric>

#include "stpbo/errors.hpp"

namespace stpbo {

std::vector<InputPoint> latin_hypercube(std::size_t n, const Bounds& bounds, RandomStream& rng) {
  validate_bounds(bounds);
  if (n == 0) throw InvalidParameter("latin_hypercube needs n >= 1");
  const auto dim = static_cast<Eigen::Index>(bounds.size());
  std::vector<InputPoint> points(n, InputPoint(dim));
  std::vector<std::size_t> strata(n);
  for (Eigen::Index d = 0; d < dim; ++d) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    // Fisher-Yates with the stream's own uniforms keeps designs portable.
    for (std::size_t i = n - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
      std::swap(strata[i], strata[std::min(j, i)]);
    }
    const auto& b = bounds[static_cast<std::size_t>(d)];
    const double width = (b.high - b.low) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.uniform();
      points[i](d) = std::min(b.low + (static_cast<double>(strata[i]) + u) * width, b.high);
    }
  }
  return points;
}

std::vector<InputPoint> tensor_grid(const Bounds& bounds, std::size_t points_per_dim) {
  validate_bounds(bounds);
  if (points_per_dim < 2) throw InvalidParameter("tensor_grid needs at least 2 points per dimension");
  const std::size_t dim = bounds.size();
  std::size_t total = 1;
  for (std::size_t d = 0; d < dim; ++d) total *= points_per_dim;
  std::vector<InputPoint> grid;
  grid.reserve(total);
  std::vector<std::size_t> index(dim, 0);
  for (std::size_t k = 0; k < total; ++k) {
    InputPoint p(static_cast<Eigen::Index>(dim));
    for (std::size_t d = 0; d < dim; ++d) {
      const auto& b = bounds[d];
      const double t = static_cast<double>(index[d]) / static_cast<double>(points_per_dim - 1);
      p(static_cast<Eigen::Index>(d)) = index[d] + 1 == points_per_dim ? b.high : b.low + t * (b.high - b.low);
    }
    grid.push_back(std::move(p));
    for (std::size_t d = dim; d-- > 0;) {
      if (++index[d] < points_per_dim) break;
      index[d] = 0;
    }
  }
  return grid;
}

}  // namespace stpbo
