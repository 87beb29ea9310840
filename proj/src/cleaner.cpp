#include "freshtab/cleaner.hpp"

#include "freshtab/utf8.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace freshtab {
namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(begin, end - begin));
}

std::string collapse_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (char c : s) {
        if (c == ' ') {
            pending = !out.empty();
        } else {
            if (pending) out += ' ';
            pending = false;
            out += c;
        }
    }
    return out;
}

std::string clean_cell_text(std::string_view cell) {
    return trim(collapse_spaces(strip_reference_markers(cell)));
}

bool row_empty(const std::vector<std::string>& row) {
    return std::all_of(row.begin(), row.end(), [](const std::string& c) { return c.empty(); });
}

}  // namespace

std::string_view reject_reason_name(RejectReason reason) {
    switch (reason) {
        case RejectReason::kTooSmall: return "too-small";
        case RejectReason::kTooLargeAfterShortening: return "too-large-after-shortening";
        case RejectReason::kTooEmpty: return "too-empty";
        case RejectReason::kHeaderUnusable: return "header-unusable";
    }
    return "unknown";
}

bool is_reference_marker(std::string_view bracket_content) {
    if (bracket_content.empty() || utf8_length(bracket_content) > 12) return false;
    bool has_digit = false;
    std::string lower;
    lower.reserve(bracket_content.size());
    for (char c : bracket_content) {
        if (std::isdigit(static_cast<unsigned char>(c))) has_digit = true;
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return has_digit || lower.find("note") != std::string::npos ||
           lower.find("citation") != std::string::npos;
}

std::string strip_reference_markers(std::string_view cell) {
    std::string out;
    out.reserve(cell.size());
    std::size_t pos = 0;
    while (pos < cell.size()) {
        if (cell[pos] == '[') {
            const std::size_t close = cell.find(']', pos + 1);
            if (close != std::string_view::npos &&
                is_reference_marker(cell.substr(pos + 1, close - pos - 1))) {
                pos = close + 1;
                continue;
            }
        }
        out += cell[pos];
        ++pos;
    }
    return out;
}

std::string consolidate_nonvalues(std::string cell) {
    static const std::array<std::string_view, 7> non_values = {
        "—", "–", "-", "N/A", "n/a", "TBD", "?"};
    const std::string trimmed = trim(cell);
    for (std::string_view nv : non_values) {
        if (trimmed == nv) return "";
    }
    return trimmed;
}

double nonempty_ratio(const std::vector<std::vector<std::string>>& rows) {
    std::size_t total = 0;
    std::size_t filled = 0;
    for (const auto& row : rows) {
        for (const auto& cell : row) {
            ++total;
            if (!cell.empty()) ++filled;
        }
    }
    return total == 0 ? 0.0 : static_cast<double>(filled) / static_cast<double>(total);
}

std::string check_clean_invariants(const CleanTable& table, const TableLimits& limits) {
    if (table.header.empty() || std::all_of(table.header.begin(), table.header.end(),
                                            [](const std::string& h) { return h.empty(); })) {
        return "header-nonempty";
    }
    for (const auto& h : table.header) {
        if (utf8_length(h) > static_cast<std::size_t>(limits.max_cell_chars)) {
            return "cell-length";
        }
    }
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size()) return "rectangular";
        if (row_empty(row)) return "no-empty-rows";
        for (const auto& cell : row) {
            if (utf8_length(cell) > static_cast<std::size_t>(limits.max_cell_chars)) {
                return "cell-length";
            }
        }
    }
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        bool any = table.rows.empty();
        for (const auto& row : table.rows) {
            if (!row[c].empty()) {
                any = true;
                break;
            }
        }
        if (!any) return "no-empty-columns";
    }
    const int rows = static_cast<int>(table.rows.size());
    const int cols = static_cast<int>(table.header.size());
    if (rows < limits.min_rows || rows > limits.max_rows) return "row-count-range";
    if (cols < limits.min_cols || cols > limits.max_cols) return "column-count-range";
    if (nonempty_ratio(table.rows) < limits.min_nonempty_ratio) return "nonempty-ratio";
    if (serialized_length(table) > static_cast<std::size_t>(limits.max_serialized_chars)) {
        return "serialized-length";
    }
    auto has_marker = [](const std::string& cell) {
        std::size_t pos = 0;
        while ((pos = cell.find('[', pos)) != std::string::npos) {
            const std::size_t close = cell.find(']', pos + 1);
            if (close != std::string::npos &&
                is_reference_marker(std::string_view(cell).substr(pos + 1, close - pos - 1))) {
                return true;
            }
            ++pos;
        }
        return false;
    };
    for (const auto& h : table.header) {
        if (has_marker(h)) return "reference-markers";
    }
    for (const auto& row : table.rows) {
        for (const auto& cell : row) {
            if (has_marker(cell)) return "reference-markers";
        }
    }
    return "";
}

CleanOutcome clean_table(const RawTable& raw, const TableLimits& limits) {
    CleanOutcome outcome;
    outcome.source_index = raw.source_index;
    auto reject = [&](RejectReason reason) {
        outcome.reason = reason;
        return outcome;
    };

    if (raw.header_depth < 1) return reject(RejectReason::kHeaderUnusable);
    if (raw.grid.size() <= static_cast<std::size_t>(raw.header_depth)) {
        return reject(RejectReason::kTooSmall);  // header rows only, no data
    }
    const std::size_t width = raw.grid.front().size();
    for (const auto& row : raw.grid) {
        if (row.size() != width) return reject(RejectReason::kHeaderUnusable);
    }

    // 1. flatten stacked headers: distinct stacked names joined " – "
    const auto depth = static_cast<std::size_t>(raw.header_depth);
    std::vector<std::string> header(width);
    for (std::size_t c = 0; c < width; ++c) {
        std::string joined;
        std::string previous;
        for (std::size_t r = 0; r < depth; ++r) {
            const std::string part = clean_cell_text(raw.grid[r][c]);
            if (part.empty() || part == previous) continue;
            if (!joined.empty()) joined += " – ";
            joined += part;
            previous = part;
        }
        header[c] = joined;
    }

    // 2+3. per-cell hygiene: reference markers out, non-values emptied
    std::vector<std::vector<std::string>> rows;
    rows.reserve(raw.grid.size() - depth);
    for (std::size_t r = depth; r < raw.grid.size(); ++r) {
        std::vector<std::string> row;
        row.reserve(width);
        for (const auto& cell : raw.grid[r]) {
            row.push_back(consolidate_nonvalues(clean_cell_text(cell)));
        }
        rows.push_back(std::move(row));
    }
    for (auto& h : header) h = consolidate_nonvalues(std::move(h));

    // 4. drop fully empty rows, then fully empty columns (a column counts
    // as empty when all its data cells are)
    std::erase_if(rows, row_empty);
    std::vector<std::size_t> kept_cols;
    for (std::size_t c = 0; c < width; ++c) {
        bool any = false;
        for (const auto& row : rows) {
            if (!row[c].empty()) {
                any = true;
                break;
            }
        }
        if (any) kept_cols.push_back(c);
    }
    if (kept_cols.size() != width) {
        std::vector<std::string> new_header;
        for (std::size_t c : kept_cols) new_header.push_back(std::move(header[c]));
        header = std::move(new_header);
        for (auto& row : rows) {
            std::vector<std::string> new_row;
            for (std::size_t c : kept_cols) new_row.push_back(std::move(row[c]));
            row = std::move(new_row);
        }
    }
    if (rows.empty() || header.empty()) {
        // consolidation emptied the whole body
        return reject(RejectReason::kTooEmpty);
    }

    // 5. truncate over-long cells; a header that would need it is unusable
    const auto max_cell = static_cast<std::size_t>(limits.max_cell_chars);
    for (const auto& h : header) {
        if (utf8_length(h) > max_cell) return reject(RejectReason::kHeaderUnusable);
    }
    for (auto& row : rows) {
        for (auto& cell : row) {
            if (utf8_length(cell) > max_cell) cell = utf8_truncate(cell, max_cell);
        }
    }

    CleanTable table;
    table.page_title = raw.page.title;
    table.page_url = raw.page.url;
    table.domain = raw.page.domain;
    if (raw.caption) {
        std::string caption = consolidate_nonvalues(clean_cell_text(*raw.caption));
        if (utf8_length(caption) > max_cell) caption = utf8_truncate(caption, max_cell);
        if (!caption.empty()) table.caption = std::move(caption);
    }
    table.header = std::move(header);
    table.rows = std::move(rows);

    // 6. shorten from the tail; ordering semantics (standings, rankings)
    // survive, sampled rows would not
    if (static_cast<int>(table.rows.size()) > limits.max_rows) {
        table.rows.resize(static_cast<std::size_t>(limits.max_rows));
    }
    while (serialized_length(table) > static_cast<std::size_t>(limits.max_serialized_chars) &&
           static_cast<int>(table.rows.size()) > limits.min_rows) {
        table.rows.pop_back();
    }

    // 7. verify
    const std::string violated = check_clean_invariants(table, limits);
    if (violated.empty()) {
        outcome.table = std::move(table);
        return outcome;
    }
    if (violated == "row-count-range" || violated == "column-count-range") {
        const int rows_n = static_cast<int>(table.rows.size());
        const int cols_n = static_cast<int>(table.header.size());
        if (rows_n < limits.min_rows || cols_n < limits.min_cols) {
            return reject(RejectReason::kTooSmall);
        }
        return reject(RejectReason::kTooLargeAfterShortening);
    }
    if (violated == "serialized-length") {
        return reject(RejectReason::kTooLargeAfterShortening);
    }
    if (violated == "header-nonempty") return reject(RejectReason::kHeaderUnusable);
    return reject(RejectReason::kTooEmpty);
}

std::optional<CleanTable> pick_table(const std::vector<CleanOutcome>& outcomes) {
    const CleanOutcome* best = nullptr;
    double best_ratio = -1.0;
    for (const auto& outcome : outcomes) {
        if (!outcome.accepted()) continue;
        const double ratio = nonempty_ratio(outcome.table->rows);
        if (best == nullptr) {
            best = &outcome;
            best_ratio = ratio;
            continue;
        }
        if (ratio > best_ratio ||
            (ratio == best_ratio &&
             (outcome.table->rows.size() > best->table->rows.size() ||
              (outcome.table->rows.size() == best->table->rows.size() &&
               outcome.source_index < best->source_index)))) {
            best = &outcome;
            best_ratio = ratio;
        }
    }
    if (best == nullptr) return std::nullopt;
    return best->table;
}

}  // namespace freshtab
