#include "stpbo/random.hpp"

#include <cmath>

#include "stpbo/errors.hpp"

namespace stpbo {

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  engine_.seed(seq);
}

RandomStream RandomStream::split(std::uint64_t index) const {
  // splitmix64 finalizer over the pair keeps children decorrelated.
  std::uint64_t z = seed_ ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return RandomStream(z);
}

double RandomStream::uniform() { return std::generate_canonical<double, 53>(engine_); }

double RandomStream::normal() { return normal_(engine_); }

double RandomStream::gamma(double shape) {
  if (!(shape > 0.0)) throw InvalidParameter("gamma shape must be positive");
  if (shape < 1.0) {
    // Boost the shape and correct with U^{1/shape}.
    double u = uniform();
    while (u <= 0.0) u = uniform();
    return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomStream::chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

}  // namespace stpbo
