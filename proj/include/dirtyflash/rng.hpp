#pragma once

#include <cstdint>
#include <random>

namespace dirtyflash {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seed of the independent stream for `trial` under `master`. Depends only on
/// the pair, so trials can run in any order or on any thread.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return mix64(mix64(master) ^ mix64(trial + 0x632BE59BD9B4E019ull));
}

inline Rng trial_rng(std::uint64_t master, std::uint64_t trial) { return Rng(trial_seed(master, trial)); }

}  // namespace dirtyflash
