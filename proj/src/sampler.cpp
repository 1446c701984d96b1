#include "nullcone/sampler.hpp"

#include <stdexcept>

namespace nullcone {

Sampler::Sampler(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  rng_.seed(seq);
}

std::uint64_t Sampler::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty sampling range");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  for (;;) {
    std::uint64_t x = rng_();
    if (x <= limit) return x % bound;
  }
}

FieldScalar Sampler::coefficient(const Field& f) {
  if (f.is_prime()) return FieldScalar(f, static_cast<long>(1 + below(f.characteristic() - 1)));
  long v = static_cast<long>(below(40)) - 20;
  return FieldScalar(f, v >= 0 ? v + 1 : v);
}

FieldScalar Sampler::element(const Field& f) {
  if (f.is_prime()) return FieldScalar(f, static_cast<long>(below(f.characteristic())));
  return FieldScalar(f, static_cast<long>(below(41)) - 20);
}

double Sampler::unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

}  // namespace nullcone
