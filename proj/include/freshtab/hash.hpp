#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace freshtab {

std::string sha256_hex(std::string_view data);

// Stable across platforms and runs; keys RNG substreams and nothing
// security-sensitive.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace freshtab
