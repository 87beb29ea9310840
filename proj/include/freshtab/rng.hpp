#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace freshtab {

// Deterministic, platform-independent generator (splitmix64).
// std::uniform_int_distribution is avoided throughout: its output is
// implementation-defined and the pipeline pins byte-identical artifacts.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    // Unbiased draw in [0, bound) via rejection; bound > 0.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

// Substream keyed by (seed, stage, key), so per-item sampling is independent
// of processing order.
SplitMix64 substream(std::uint64_t seed, std::string_view stage, std::string_view key);

// First n picks of a seeded Fisher-Yates pass over [0, pool); n <= pool.
// A uniform draw without replacement, in draw order.
std::vector<std::size_t> sample_indices(SplitMix64& rng, std::size_t pool, std::size_t n);

}  // namespace freshtab
