#include "iwasawa/random.hpp"

namespace iwasawa {

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

u128 Rng::uniform_below(u128 bound) {
  if (bound <= 1) return 0;
  const u128 top = bound - 1;
  int bits = 0;
  while (bits < 128 && (top >> bits) != 0) ++bits;
  const u128 mask = bits == 128 ? ~u128(0) : (u128(1) << bits) - 1;
  for (;;) {
    u128 x = (u128(engine_()) << 64) | engine_();
    x &= mask;
    if (x < bound) return x;
  }
}

PadicScalar Rng::unit(const PadicRing& ring) {
  for (;;) {
    PadicScalar s = scalar(ring);
    if (s.is_unit()) return s;
  }
}

}  // namespace iwasawa
