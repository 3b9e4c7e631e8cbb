#pragma once

#include <cstdint>
#include <random>

namespace anchorlab {

// All stochastic operations take an explicit seed and draw through this
// engine so that runs are bit-reproducible across platforms. Distribution
// adapters from <random> are avoided on purpose: their output is not
// specified, the raw engine's is.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

// Fair coin from one engine draw.
inline bool coin_flip(Rng& rng) { return (rng() & 1ull) != 0; }

// splitmix64 step, used to derive independent per-task seeds from a base
// seed and a task index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace anchorlab
