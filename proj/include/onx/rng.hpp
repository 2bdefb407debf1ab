#pragma once

#include <cstdint>

#include "onx/rat.hpp"

namespace onx {

// splitmix64: tiny, seeded, identical output on every platform. Used wherever
// reproducibility is promised (generators, sampling falsifier).
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-enough in [0, n). Modulo bias is irrelevant here; determinism is not.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  // Inclusive integer range.
  int range(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }
};

// Random rational in [lo, hi] with denominator at most max_den: picks a
// denominator b in [1, max_den], then a numerator grid point. Exact arithmetic.
inline Rat rat_in_range(Rng& g, const Rat& lo, const Rat& hi, unsigned max_den) {
  if (max_den == 0) max_den = 1;
  std::uint64_t b = 1 + g.below(max_den);
  // lo + k/b for k in [0, floor((hi-lo)*b)], grid capped so k fits comfortably
  Rat scaled = (hi - lo) * Rat(static_cast<long long>(b));
  BigInt count = numerator(scaled) / denominator(scaled);
  if (count < 0) count = 0;
  count += 1;
  if (count > 1000000) count = 1000000;
  std::uint64_t k = g.below(count.convert_to<std::uint64_t>());
  return lo + Rat(BigInt(static_cast<long long>(k)), BigInt(static_cast<long long>(b)));
}

}  // namespace onx
