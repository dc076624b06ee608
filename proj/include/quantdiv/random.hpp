#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace quantdiv {

/// SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for item `index` of stream `stream`, independent of evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) + index);
}

/// Streams used by the experiments; part of the reproducibility contract.
inline constexpr std::uint64_t kSplitStream = 0x5311;
inline constexpr std::uint64_t kPermutationStream = 0x75CE;

using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection; unlike
/// std::uniform_int_distribution the sequence is identical on every stdlib.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = uniform_below(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace quantdiv
