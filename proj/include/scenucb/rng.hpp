#pragma once

#include <cstdint>
#include <random>

namespace scenucb {

using Engine = std::mt19937_64;

/// Independent randomness sources of one experiment, all derived from a single
/// master seed so that any one of them can be varied while the others stay fixed.
enum class Stream : std::uint64_t { scenarios = 1, realizations = 2, redraw = 3, noise = 4 };

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct SeedBundle {
    std::uint64_t master = 0;

    std::uint64_t stream(Stream s) const { return splitmix64(splitmix64(master) ^ static_cast<std::uint64_t>(s)); }
    Engine engine(Stream s) const { return Engine(stream(s)); }
    /// Bundle for the rep-th repetition of an experiment.
    SeedBundle repetition(std::uint64_t rep) const { return {master + rep}; }
};

}  // namespace scenucb
