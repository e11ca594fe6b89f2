#pragma once

#include <cstdint>

#include "certlab/common.hpp"

namespace certlab {

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based stream seed for the (seed, run, policy) replication grid.
// Policies at the same (seed, run) share the stage-1 substream by passing
// the reserved kStage1Tag as policy index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t seed_idx,
                                 std::uint64_t run_idx, std::uint64_t policy_idx) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ mix64(seed_idx + 0x632be59bd9b4e019ULL));
    h = mix64(h ^ mix64(run_idx + 0x9e6c63d0876a9a47ULL));
    h = mix64(h ^ mix64(policy_idx + 0xc2b2ae3d27d4eb4fULL));
    return h;
}

// Reserved policy indices for shared substreams.
constexpr std::uint64_t kStage1Tag = 0xfffffffffffffff1ULL;
constexpr std::uint64_t kMuTag = 0xfffffffffffffff2ULL;

// Beta(a, b) via two gamma draws.
double beta_sample(double a, double b, Rng& rng);

}  // namespace certlab
