#pragma once

#include <cstdint>
#include <random>

namespace kmed {

using Rng = std::mt19937_64;

// Unbiased draw from {0, ..., n-1}, independent of the standard library's
// distribution implementations.
inline std::uint64_t draw_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t lim = std::uint64_t(-1) - std::uint64_t(-1) % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= lim);
  return v % n;
}

// Uniform double in [0, 1).
inline double draw_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Derive an independent substream seed from a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace kmed
