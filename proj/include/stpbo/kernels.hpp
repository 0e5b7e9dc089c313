#pragma once

#include <span>
#include <vector>

#include "stpbo/linalg.hpp"

namespace stpbo {

/// A location in (normalized) input space.
using InputPoint = Vector;

enum class KernelFamily { SquaredExponentialIsotropic };

struct KernelSpec {
  KernelFamily family = KernelFamily::SquaredExponentialIsotropic;
  double bandwidth = 1.0;

  /// Throws InvalidParameter unless bandwidth is positive and finite.
  void validate() const;
};

/// exp(-|a - b|^2 / (2 bandwidth^2)).
double kernel_eval(const KernelSpec& spec, const InputPoint& a, const InputPoint& b);

/// Entry (i, j) is kernel_eval(rows[i], cols[j]).
Matrix kernel_matrix(const KernelSpec& spec, std::span<const InputPoint> rows,
                     std::span<const InputPoint> cols);

}  // namespace stpbo
