#pragma once

#include "freshtab/domain.hpp"

#include <optional>
#include <string>
#include <vector>

namespace freshtab {

struct PageRef {
    std::string title;
    std::string url;
    Domain domain = Domain::kOther;
};

// A table as scraped: rectangular after colspan/rowspan expansion, header
// rows still stacked.
struct RawTable {
    PageRef page;
    std::optional<std::string> caption;
    std::vector<std::vector<std::string>> grid;  // all rows same width
    int header_depth = 0;  // leading all-header rows
    int source_index = 0;  // position of the table on the page

    bool operator==(const RawTable&) const = default;
};

// A normalized table: one header row, no empty rows/columns, within every
// configured size limit.
struct CleanTable {
    std::string page_title;
    std::string page_url;
    Domain domain = Domain::kOther;
    std::optional<std::string> caption;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    bool operator==(const CleanTable&) const = default;
};

// Deterministic rendering: optional caption line, header line, one line per
// row, cells joined by " | ". This exact text is both the character-count
// measure behind the size cap and the table block embedded in prompts.
std::string serialize_table(const CleanTable& table);

// Code points of serialize_table(table).
std::size_t serialized_length(const CleanTable& table);

}  // namespace freshtab
