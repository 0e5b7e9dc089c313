#include "stpbo/kernels.hpp"

#include <cmath>
#include <string>

#include "stpbo/errors.hpp"

namespace stpbo {

void KernelSpec::validate() const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw InvalidParameter("kernel bandwidth must be positive and finite, got " +
                           std::to_string(bandwidth));
  }
}

namespace {

double squared_exponential(double bandwidth, const InputPoint& a, const InputPoint& b) {
  return std::exp(-(a - b).squaredNorm() / (2.0 * bandwidth * bandwidth));
}

void check_same_dim(const InputPoint& a, const InputPoint& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("kernel inputs have dimensions " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const InputPoint& a, const InputPoint& b) {
  spec.validate();
  check_same_dim(a, b);
  return squared_exponential(spec.bandwidth, a, b);
}

Matrix kernel_matrix(const KernelSpec& spec, std::span<const InputPoint> rows,
                     std::span<const InputPoint> cols) {
  spec.validate();
  Matrix k(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  if (rows.empty() || cols.empty()) return k;
  const auto dim = rows.front().size();
  for (const auto& p : rows) check_same_dim(p, rows.front());
  for (const auto& p : cols) {
    if (p.size() != dim) check_same_dim(p, rows.front());
  }
  const bool same = rows.data() == cols.data() && rows.size() == cols.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    if (same) {
      k(ii, ii) = 1.0;
      for (std::size_t j = 0; j < i; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        k(ii, jj) = k(jj, ii) = squared_exponential(spec.bandwidth, rows[i], cols[j]);
      }
    } else {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        k(ii, static_cast<Eigen::Index>(j)) = squared_exponential(spec.bandwidth, rows[i], cols[j]);
      }
    }
  }
  return k;
}

}  // namespace stpbo
