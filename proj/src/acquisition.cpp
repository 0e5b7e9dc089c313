#include "stpbo/acquisition.hpp"

#include <algorithm>
#include <string>

#include "stpbo/errors.hpp"

namespace stpbo {

Incumbent incumbent(const Dataset& data) {
  if (data.empty()) throw EmptyDataset("no incumbent for an empty dataset");
  Eigen::Index best = 0;
  data.outputs.minCoeff(&best);
  return {data.outputs(best), data.inputs[static_cast<std::size_t>(best)]};
}

double ei_gaussian(const UnivariateMarginal& m, double y_best) {
  const double gap = y_best - m.mu;
  if (m.scale <= 0.0) return std::max(gap, 0.0);
  const double z = gap / m.scale;
  return std::max(gap * std_normal_cdf(z) + m.scale * std_normal_pdf(z), 0.0);
}

double ei_student_t(const UnivariateMarginal& m, double y_best) {
  if (!(m.nu > 1.0)) {
    throw InvalidParameter("Student-T expected improvement needs nu > 1, got " + std::to_string(m.nu));
  }
  const double gap = y_best - m.mu;
  if (m.scale <= 0.0) return std::max(gap, 0.0);
  const double z = gap / m.scale;
  const double density_term =
      m.nu / (m.nu - 1.0) * (1.0 + z * z / m.nu) * m.scale * std_t_pdf(z, m.nu);
  return std::max(gap * std_t_cdf(z, m.nu) + density_term, 0.0);
}

double expected_improvement(const UnivariateMarginal& m, double y_best) {
  return m.family == Family::Gaussian ? ei_gaussian(m, y_best) : ei_student_t(m, y_best);
}

std::vector<double> ei_surface(const PosteriorPredictive& posterior, double y_best) {
  std::vector<double> out;
  for (const auto& m : predictive_marginals(posterior)) out.push_back(expected_improvement(m, y_best));
  return out;
}

}  // namespace stpbo
