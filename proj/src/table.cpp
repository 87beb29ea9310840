#include "freshtab/table.hpp"

#include "freshtab/utf8.hpp"

namespace freshtab {
namespace {

void append_joined(const std::vector<std::string>& cells, std::string& out) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out += " | ";
        out += cells[i];
    }
}

}  // namespace

std::string serialize_table(const CleanTable& table) {
    std::string out;
    if (table.caption && !table.caption->empty()) {
        out += *table.caption;
        out += '\n';
    }
    append_joined(table.header, out);
    for (const auto& row : table.rows) {
        out += '\n';
        append_joined(row, out);
    }
    return out;
}

std::size_t serialized_length(const CleanTable& table) {
    return utf8_length(serialize_table(table));
}

}  // namespace freshtab
