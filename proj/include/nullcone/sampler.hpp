#pragma once

#include <cstdint>
#include <random>

#include "nullcone/field.hpp"

namespace nullcone {

/// Deterministic random source. Uses its own rejection sampling on top of
/// mt19937_64 since standard distributions differ between libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed, std::uint64_t stream = 0);
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Random coefficient: uniform over F_p, or from {-20..20}\{0} over Q.
  FieldScalar coefficient(const Field& f);
  /// Uniform element of F_p, or from {-20..20} over Q.
  FieldScalar element(const Field& f);
  /// Uniform double in [0, 1).
  double unit();

 private:
  std::mt19937_64 rng_;
};

}  // namespace nullcone
