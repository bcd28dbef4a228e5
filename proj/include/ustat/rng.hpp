#pragma once

#include <cstdint>
#include <string_view>

namespace ustat {

// Counter-based random numbers built on the SplitMix64 finalizer.
//
// Every draw is a pure function of (seed, counter), so a sample path can be
// indexed randomly: point j of a path never depends on how many points were
// generated before it. This gives two contracts for free:
//   * sample(seed, n) is a prefix of sample(seed, n') for n' > n;
//   * Monte Carlo replications can be partitioned over workers in any way
//     without changing a single draw.

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// The index-th output of the SplitMix64 stream seeded with `seed`.
inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + (index + 1) * kGolden);
}

// Uniform double in [0, 1) from the top 53 bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(counter_u64(seed, index) >> 11) * 0x1.0p-53;
}

// Decorrelated sub-stream seed; `tag` distinguishes independent roles
// (e.g. chain path vs. smoothing noise) inside one process sampler.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed ^ mix64(tag * kGolden + 0x632BE59BD9B4E019ull));
}

// Seed for replication r of a Monte Carlo experiment.
inline std::uint64_t replication_seed(std::uint64_t master_seed, std::uint64_t r) {
  return counter_u64(master_seed, r);
}

// FNV-1a over bytes; used to fold string tags (process ids, config text)
// into seed derivations and artifact hashes.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace ustat
