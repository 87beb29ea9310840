#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace freshtab {

// Character counts and cuts are in Unicode code points; malformed bytes
// count as one code point each so no input can make these throw.
std::size_t utf8_length(std::string_view s);
std::string utf8_truncate(std::string_view s, std::size_t max_points);

// Lowercases ASCII, Latin-1 supplement and the basic Cyrillic block; other
// scripts pass through. Shared by tokenization so fixtures can be
// hand-checked against one documented rule.
std::string fold_case(std::string_view s);

}  // namespace freshtab
