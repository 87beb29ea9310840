#pragma once

#include "freshtab/table.hpp"

#include <string>
#include <vector>

namespace freshtab {

// Lenient extraction of data tables from rendered page HTML. One RawTable
// per top-level data table; nested tables are skipped (their text stays in
// the enclosing cell). Navigation and layout tables (navbox/infobox/
// metadata/sidebar classes, role="navigation"/"presentation") are excluded.
// Pages with no tables yield an empty list, never an error.
std::vector<RawTable> extract_tables(const std::string& html);

// Tag stripping + entity decoding + whitespace collapsing, as applied to
// cell contents. Subtrees of style/script and display:none elements are
// dropped entirely.
std::string html_to_text(std::string_view html);

}  // namespace freshtab
