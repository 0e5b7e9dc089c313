#include "stpbo/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "stpbo/errors.hpp"

namespace stpbo {

NelderMeadResult nelder_mead_minimize(const std::function<double(const Vector&)>& f,
                                      const Vector& start, const Bounds& bounds,
                                      const NelderMeadOptions& options) {
  validate_bounds(bounds);
  if (static_cast<std::size_t>(start.size()) != bounds.size()) {
    throw DimensionMismatch("Nelder-Mead start point does not match bounds");
  }
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  const auto n = start.size();
  std::vector<Vector> simplex;
  std::vector<double> values;
  auto add_vertex = [&](Vector x) {
    x = clamp_to_bounds(bounds, std::move(x));
    values.push_back(f(x));
    simplex.push_back(std::move(x));
  };
  add_vertex(start);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& b = bounds[static_cast<std::size_t>(i)];
    const double step = options.initial_step_fraction * (b.high - b.low);
    Vector x = simplex.front();
    x(i) = x(i) + step <= b.high ? x(i) + step : x(i) - step;
    add_vertex(std::move(x));
  }

  std::vector<std::size_t> order(simplex.size());
  std::size_t iteration = 0;
  for (; iteration < options.max_iterations; ++iteration) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];
    if (values[worst] - values[best] <= options.value_tolerance) break;

    Vector centroid = Vector::Zero(n);
    for (std::size_t k = 0; k < simplex.size(); ++k) {
      if (k != worst) centroid += simplex[k];
    }
    centroid /= static_cast<double>(n);

    auto trial = [&](double coefficient) {
      Vector x = clamp_to_bounds(bounds, centroid + coefficient * (centroid - simplex[worst]));
      const double v = f(x);
      return std::pair{std::move(x), v};
    };

    auto [reflected, f_reflected] = trial(kReflect);
    if (f_reflected < values[best]) {
      auto [expanded, f_expanded] = trial(kExpand);
      if (f_expanded < f_reflected) {
        simplex[worst] = std::move(expanded);
        values[worst] = f_expanded;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = std::move(reflected);
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[worst];
    auto [contracted, f_contracted] = trial(outside ? kContract : -kContract);
    if (f_contracted < (outside ? f_reflected : values[worst])) {
      simplex[worst] = std::move(contracted);
      values[worst] = f_contracted;
      continue;
    }
    for (std::size_t k = 0; k < simplex.size(); ++k) {
      if (k == best) continue;
      simplex[k] = clamp_to_bounds(bounds, simplex[best] + kShrink * (simplex[k] - simplex[best]));
      values[k] = f(simplex[k]);
    }
  }
  const auto best = static_cast<std::size_t>(
      std::distance(values.begin(), std::min_element(values.begin(), values.end())));
  return {simplex[best], values[best], iteration};
}

}  // namespace stpbo
