#pragma once

#include <cstdint>
#include <random>

namespace sofic {

/// SplitMix64 finaliser; used only to derive engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Engine for logical stream `stream` under `seed`.
///
/// Every random consumer derives its engine from (seed, stream index), so a
/// parallel loop that indexes streams by trial number produces the same
/// numbers no matter how iterations are scheduled across threads.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL)));
}

// Stream namespaces, so that different operations sharing one seed draw
// independent numbers.
namespace streams {
inline constexpr std::uint64_t kGenerator = 1ULL << 56;
inline constexpr std::uint64_t kFunctionFamily = 2ULL << 56;
inline constexpr std::uint64_t kCycleSampling = 3ULL << 56;
inline constexpr std::uint64_t kWalkSampling = 4ULL << 56;
inline constexpr std::uint64_t kSurgery = 5ULL << 56;
inline constexpr std::uint64_t kPowerIteration = 6ULL << 56;
}  // namespace streams

}  // namespace sofic
