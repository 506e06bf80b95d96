#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace aab {

using RandomStream = std::mt19937_64;

// SplitMix64 finalizer.
constexpr uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Domain tags keep streams for different purposes apart even when they share
// a user seed and an edge id.
enum class StreamDomain : uint64_t {
  kLocations = 1,
  kEdgeInclusion = 2,
  kCorruption = 3,
  kTriangleSampling = 4,
  kMonteCarlo = 5,
};

inline uint64_t HashSeed(uint64_t seed, StreamDomain domain,
                         std::initializer_list<uint64_t> keys) {
  uint64_t h = MixBits(seed ^ MixBits(static_cast<uint64_t>(domain)));
  for (const uint64_t key : keys) {
    h = MixBits(h ^ MixBits(key + 0x632be59bd9b4e019ULL));
  }
  return h;
}

inline RandomStream DeriveStream(uint64_t seed, StreamDomain domain,
                                 std::initializer_list<uint64_t> keys = {}) {
  return RandomStream(HashSeed(seed, domain, keys));
}

// Stream owned by the unordered edge {i, j}; independent of argument order.
inline RandomStream EdgeStream(uint64_t seed, StreamDomain domain, int i,
                               int j) {
  const auto lo = static_cast<uint64_t>(i < j ? i : j);
  const auto hi = static_cast<uint64_t>(i < j ? j : i);
  return DeriveStream(seed, domain, {lo, hi});
}

}  // namespace aab
