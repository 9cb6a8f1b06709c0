#pragma once

// Deterministic PRNG for the Monte Carlo oracles: xoshiro256** seeded
// through SplitMix64, plus a stable per-shard seed derivation so sharded
// runs reproduce bit for bit regardless of execution order.

#include <array>
#include <cstdint>
#include <string_view>

namespace kps {

inline constexpr std::string_view kRngAlgorithm = "xoshiro256** 1.0 (splitmix64-seeded)";

// SplitMix64 finalizer; also usable as a standalone 64-bit mixer.
std::uint64_t splitmix64(std::uint64_t& state);

class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed);

  std::uint64_t next();

  // Unbiased draw in [0, bound) via rejection. bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound);

 private:
  std::array<std::uint64_t, 4> s_;
};

// Seed for one shard of a sharded run: a fixed hash of (seed, shard).
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard);

}  // namespace kps
