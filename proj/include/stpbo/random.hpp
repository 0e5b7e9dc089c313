#pragma once

#include <cstdint>
#include <random>

namespace stpbo {

/// Seedable random stream handed explicitly to every stochastic operation.
///
/// Streams are split by deriving a child seed from (seed, index), so
/// independent runs of a repeated experiment get reproducible, unrelated
/// sequences regardless of execution order.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Child stream for the given index; does not advance this stream.
  RandomStream split(std::uint64_t index) const;

  double uniform();  // [0, 1)
  double normal();
  /// Gamma(shape, 1) via Marsaglia-Tsang.
  double gamma(double shape);
  double chi_squared(double dof);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace stpbo
