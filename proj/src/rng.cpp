#include "freshtab/rng.hpp"

#include "freshtab/hash.hpp"

#include <cassert>
#include <numeric>
#include <string>

namespace freshtab {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    assert(bound > 0);
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
}

SplitMix64 substream(std::uint64_t seed, std::string_view stage, std::string_view key) {
    std::string material;
    material.reserve(16 + stage.size() + key.size() + 2);
    material += std::to_string(seed);
    material += '\x1f';
    material += stage;
    material += '\x1f';
    material += key;
    return SplitMix64(fnv1a64(material));
}

std::vector<std::size_t> sample_indices(SplitMix64& rng, std::size_t pool, std::size_t n) {
    assert(n <= pool);
    std::vector<std::size_t> slots(pool);
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    std::vector<std::size_t> picks;
    picks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(pool - i));
        std::swap(slots[i], slots[j]);
        picks.push_back(slots[i]);
    }
    return picks;
}

}  // namespace freshtab
