#pragma once

#include <cstdint>
#include <random>

#include "iwasawa/padic.hpp"

namespace iwasawa {

// Seeded, platform-independent random source. Streams are keyed by
// (seed, stream) so parallel trials stay reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform in [0, bound); bound > 0.
  u128 uniform_below(u128 bound);
  PadicScalar scalar(const PadicRing& ring) { return PadicScalar::from_raw(ring, uniform_below(ring.modulus())); }
  PadicScalar unit(const PadicRing& ring);

 private:
  std::mt19937_64 engine_;
};

}  // namespace iwasawa
