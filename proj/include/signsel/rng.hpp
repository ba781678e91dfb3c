#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace signsel {

// mt19937_64's output sequence is fixed by the standard, so everything drawn
// through the helpers below is reproducible across standard libraries.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Independent stream for one Monte Carlo trial; depends only on (seed, index).
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

// Fills `out` with equiprobable +1/-1 values, one generator bit per sign.
inline void draw_signs(Rng& rng, std::span<std::int8_t> out) {
  std::uint64_t bits = 0;
  int left = 0;
  for (auto& s : out) {
    if (left == 0) {
      bits = rng();
      left = 64;
    }
    s = (bits & 1U) ? std::int8_t{-1} : std::int8_t{1};
    bits >>= 1;
    --left;
  }
}

// Uniform index in [0, n) for n a power of two.
inline std::uint64_t draw_index_pow2(Rng& rng, std::uint64_t n) {
  return rng() & (n - 1);
}

// Uniform double in [0, 1) with 53 random bits.
inline double draw_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace signsel
