#pragma once

#include <cstdint>
#include <random>

#include "nsbox/rational.hpp"

namespace nsbox {

// All sampling in the library draws from a caller-owned generator.
using Rng = std::mt19937_64;

inline int random_bit(Rng& rng) { return static_cast<int>(rng() >> 63); }

/// SplitMix64 finalizer; used to derive independent seeds from one draw.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// True with probability exactly `p` when p's denominator fits in 64 bits.
bool bernoulli(const Rational& p, Rng& rng);

}  // namespace nsbox
