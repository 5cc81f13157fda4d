#pragma once

#include <cstdint>
#include <random>

namespace transnet {

/// SplitMix64 finalizer. Used to derive independent sub-seeds from one
/// user seed so each random stream can be reproduced on its own.
constexpr std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Sub-seed for stream `stream` of `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix_seed(mix_seed(seed) ^ mix_seed(stream + 0x632BE59BD9B4E019ULL));
}

// Documented stream ids. Changing any of these changes every generated artifact.
namespace streams {
inline constexpr std::uint64_t kDirections = 1;
inline constexpr std::uint64_t kRadii = 2;
inline constexpr std::uint64_t kRandomWeights = 3;
inline constexpr std::uint64_t kRandomBiases = 4;
inline constexpr std::uint64_t kTestSet = 5;
inline constexpr std::uint64_t kInterior = 6;
inline constexpr std::uint64_t kSubsample = 7;
inline constexpr std::uint64_t kGpBase = 1000;  // realization k uses kGpBase + k
}  // namespace streams

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  return Engine(derive_seed(seed, stream));
}

}  // namespace transnet
