#pragma once

#include <cstdint>
#include <stdexcept>

#include "pentabell/rational.hpp"

namespace pentabell {

// splitmix64 finalizer.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based random source: every draw is a pure function of
// (master_seed, stream, index), so runs can be generated in any order or in
// parallel and still reproduce bit-identically.
struct RandomSource {
  uint64_t master_seed = 0;

  explicit RandomSource(uint64_t seed) : master_seed(seed) {}

  uint64_t draw(uint64_t stream, uint64_t index) const {
    return mix64(mix64(mix64(master_seed) ^ stream) ^ index);
  }

  // Uniform in [0, bound) via 128-bit multiply-shift.  The modulo bias is
  // bound/2^64, far below anything observable here.
  uint64_t pick(uint64_t bound, uint64_t stream, uint64_t index) const {
    if (bound == 0) throw std::invalid_argument("pick with zero bound");
    return static_cast<uint64_t>(
        (static_cast<unsigned __int128>(draw(stream, index)) * bound) >> 64);
  }

  // True with probability p.  Compares a 64-bit draw against
  // floor(p * 2^64); exact whenever the denominator divides 2^64, which
  // covers every probability arising from the eight-term state.
  bool bernoulli(const Rational& p, uint64_t stream, uint64_t index) const {
    if (p.num <= 0) return false;
    if (p.num >= p.den) return true;
    const unsigned __int128 threshold =
        (static_cast<unsigned __int128>(p.num) << 64) / p.den;
    return draw(stream, index) < static_cast<uint64_t>(threshold);
  }
};

}  // namespace pentabell
