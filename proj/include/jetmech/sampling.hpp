#pragma once

#include <cstdint>
#include <random>

#include "jetmech/spaces.hpp"

namespace jetmech {

/// Seeded uniform sampler. The mapping from the 64-bit engine output to
/// [lo, hi) is fixed here so reports are reproducible across standard
/// libraries.
class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

  Vec box(int dim, double lo = -2.0, double hi = 2.0) {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = uniform(lo, hi);
    return x;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace jetmech
