#include "freshtab/html_tables.hpp"

#include "freshtab/utf8.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>

namespace freshtab {
namespace {

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct Tag {
    std::string name;       // lowercase
    std::string attrs;      // raw attribute text
    bool closing = false;
    std::size_t begin = 0;  // offset of '<'
    std::size_t end = 0;    // offset one past '>'
};

// Finds the next tag at or after pos; comments and doctypes are skipped.
std::optional<Tag> next_tag(std::string_view html, std::size_t pos) {
    while (true) {
        const std::size_t lt = html.find('<', pos);
        if (lt == std::string_view::npos) return std::nullopt;
        if (html.compare(lt, 4, "<!--") == 0) {
            const std::size_t close = html.find("-->", lt + 4);
            if (close == std::string_view::npos) return std::nullopt;
            pos = close + 3;
            continue;
        }
        const std::size_t gt = html.find('>', lt + 1);
        if (gt == std::string_view::npos) return std::nullopt;
        Tag tag;
        tag.begin = lt;
        tag.end = gt + 1;
        std::size_t p = lt + 1;
        if (p < html.size() && html[p] == '/') {
            tag.closing = true;
            ++p;
        }
        const std::size_t name_start = p;
        while (p < gt && (std::isalnum(static_cast<unsigned char>(html[p])) || html[p] == '!')) {
            ++p;
        }
        tag.name = to_lower_ascii(html.substr(name_start, p - name_start));
        tag.attrs = std::string(html.substr(p, gt - p));
        if (tag.name.empty() || tag.name[0] == '!') {
            pos = gt + 1;
            continue;
        }
        return tag;
    }
}

// Lenient attribute lookup; handles quoted and bare values.
std::optional<std::string> attr_value(const std::string& attrs, std::string_view name) {
    const std::string lower = to_lower_ascii(attrs);
    std::size_t pos = 0;
    while ((pos = lower.find(name, pos)) != std::string::npos) {
        const bool boundary_before =
            pos == 0 || !std::isalnum(static_cast<unsigned char>(lower[pos - 1]));
        std::size_t p = pos + name.size();
        while (p < lower.size() && std::isspace(static_cast<unsigned char>(lower[p]))) ++p;
        if (!boundary_before || p >= lower.size() || lower[p] != '=') {
            pos += name.size();
            continue;
        }
        ++p;
        while (p < lower.size() && std::isspace(static_cast<unsigned char>(lower[p]))) ++p;
        if (p >= lower.size()) return std::string();
        if (lower[p] == '"' || lower[p] == '\'') {
            const char quote = lower[p];
            const std::size_t close = attrs.find(quote, p + 1);
            if (close == std::string::npos) return attrs.substr(p + 1);
            return attrs.substr(p + 1, close - p - 1);
        }
        std::size_t end = p;
        while (end < lower.size() && !std::isspace(static_cast<unsigned char>(lower[end]))) {
            ++end;
        }
        return attrs.substr(p, end - p);
    }
    return std::nullopt;
}

int span_attr(const std::string& attrs, std::string_view name) {
    const auto value = attr_value(attrs, name);
    if (!value) return 1;
    int n = 0;
    const auto [ptr, ec] = std::from_chars(value->data(), value->data() + value->size(), n);
    (void)ptr;
    if (ec != std::errc{} || n < 1) return 1;
    return std::min(n, 500);
}

bool is_layout_or_navigation(const std::string& attrs) {
    const auto role = attr_value(attrs, "role");
    if (role) {
        const std::string r = to_lower_ascii(*role);
        if (r == "navigation" || r == "presentation") return true;
    }
    const auto cls = attr_value(attrs, "class");
    if (cls) {
        const std::string c = to_lower_ascii(*cls);
        for (const char* marker : {"navbox", "infobox", "metadata", "sidebar", "ambox", "vcard"}) {
            if (c.find(marker) != std::string::npos) return true;
        }
    }
    return false;
}

void decode_entity(std::string_view entity, std::string& out) {
    static const std::map<std::string_view, std::string_view> named = {
        {"amp", "&"},   {"lt", "<"},     {"gt", ">"},    {"quot", "\""},
        {"apos", "'"},  {"nbsp", " "},   {"ndash", "–"}, {"mdash", "—"},
        {"hellip", "…"}, {"minus", "−"}, {"deg", "°"}, {"times", "×"},
        {"middot", "·"}, {"shy", ""}, {"thinsp", " "}, {"ensp", " "}, {"emsp", " "}};
    if (entity.empty()) {
        out += '&';
        return;
    }
    if (entity[0] == '#') {
        char32_t cp = 0;
        bool ok = false;
        if (entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X')) {
            unsigned long v = 0;
            const auto [ptr, ec] =
                std::from_chars(entity.data() + 2, entity.data() + entity.size(), v, 16);
            ok = ec == std::errc{} && ptr == entity.data() + entity.size() && v <= 0x10ffff;
            cp = static_cast<char32_t>(v);
        } else {
            unsigned long v = 0;
            const auto [ptr, ec] =
                std::from_chars(entity.data() + 1, entity.data() + entity.size(), v, 10);
            ok = ec == std::errc{} && ptr == entity.data() + entity.size() && v <= 0x10ffff;
            cp = static_cast<char32_t>(v);
        }
        if (!ok) {
            out += '&';
            out += entity;
            out += ';';
            return;
        }
        if (cp == 0xa0) cp = ' ';  // keep non-breaking spaces collapsible
        // minimal UTF-8 encode
        std::string tmp;
        if (cp < 0x80) {
            tmp.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            tmp.push_back(static_cast<char>(0xc0 | (cp >> 6)));
            tmp.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        } else if (cp < 0x10000) {
            tmp.push_back(static_cast<char>(0xe0 | (cp >> 12)));
            tmp.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
            tmp.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        } else {
            tmp.push_back(static_cast<char>(0xf0 | (cp >> 18)));
            tmp.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
            tmp.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
            tmp.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
        }
        out += tmp;
        return;
    }
    const auto it = named.find(entity);
    if (it != named.end()) {
        out += it->second;
    } else {
        out += '&';
        out += entity;
        out += ';';
    }
}

bool hidden_by_style(const std::string& attrs) {
    const auto style = attr_value(attrs, "style");
    if (!style) return false;
    std::string s = to_lower_ascii(*style);
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    return s.find("display:none") != std::string::npos;
}

}  // namespace

std::string html_to_text(std::string_view html) {
    std::string text;
    text.reserve(html.size() / 2);
    std::size_t pos = 0;
    int skip_depth = 0;            // inside style/script/hidden subtree
    std::string skip_tag;          // element that opened the skip
    while (pos < html.size()) {
        const auto tag = next_tag(html, pos);
        const std::size_t text_end = tag ? tag->begin : html.size();
        if (skip_depth == 0) {
            // copy text, decoding entities
            for (std::size_t i = pos; i < text_end;) {
                if (html[i] == '&') {
                    const std::size_t semi = html.find(';', i + 1);
                    if (semi != std::string_view::npos && semi - i <= 12) {
                        decode_entity(html.substr(i + 1, semi - i - 1), text);
                        i = semi + 1;
                        continue;
                    }
                }
                text += html[i];
                ++i;
            }
        }
        if (!tag) break;
        pos = tag->end;
        if (skip_depth > 0) {
            if (tag->name == skip_tag) skip_depth += tag->closing ? -1 : 1;
            continue;
        }
        const bool self_closing = !tag->attrs.empty() && tag->attrs.back() == '/';
        if (!tag->closing && !self_closing &&
            (tag->name == "style" || tag->name == "script" || hidden_by_style(tag->attrs))) {
            skip_depth = 1;
            skip_tag = tag->name;
            continue;
        }
        if (tag->name == "br" || tag->name == "p" || tag->name == "div" ||
            tag->name == "li" || tag->name == "tr") {
            text += ' ';
        }
    }
    // collapse whitespace and trim
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out += ' ';
            pending_space = false;
            out += c;
        }
    }
    return out;
}

namespace {

struct CellToken {
    std::string raw;  // inner HTML
    bool header = false;
    int colspan = 1;
    int rowspan = 1;
};

struct PendingSpan {
    std::string text;
    bool header = false;
    int remaining_rows = 0;
    int colspan = 1;
};

// Parses one table segment (between its <table> and matching </table>)
// into an expanded rectangular grid.
RawTable parse_table_segment(std::string_view html, std::size_t body_begin,
                             std::size_t body_end) {
    RawTable table;
    std::vector<std::vector<CellToken>> rows;
    std::vector<CellToken>* current_row = nullptr;
    std::optional<std::size_t> cell_content_start;
    CellToken current_cell;

    auto close_cell = [&](std::size_t content_end) {
        if (!cell_content_start) return;
        current_cell.raw =
            std::string(html.substr(*cell_content_start, content_end - *cell_content_start));
        if (current_row == nullptr) {
            rows.emplace_back();
            current_row = &rows.back();
        }
        current_row->push_back(std::move(current_cell));
        current_cell = CellToken{};
        cell_content_start.reset();
    };

    std::size_t pos = body_begin;
    while (pos < body_end) {
        auto tag = next_tag(html, pos);
        if (!tag || tag->begin >= body_end) break;
        if (tag->name == "table" && !tag->closing) {
            // nested table: skip it wholesale; its markup stays inside the
            // current cell's raw range and is flattened to text later
            int nested = 1;
            std::size_t scan = tag->end;
            while (nested > 0) {
                auto inner = next_tag(html, scan);
                if (!inner || inner->begin >= body_end) {
                    scan = body_end;
                    break;
                }
                if (inner->name == "table") nested += inner->closing ? -1 : 1;
                scan = inner->end;
            }
            pos = scan;
            continue;
        }
        if (tag->name == "caption") {
            if (!tag->closing) {
                const std::size_t content = tag->end;
                auto close = next_tag(html, content);
                std::size_t end = body_end;
                std::size_t scan = content;
                while (close) {
                    if (close->name == "caption" && close->closing) {
                        end = close->begin;
                        break;
                    }
                    scan = close->end;
                    close = next_tag(html, scan);
                }
                const std::string caption = html_to_text(html.substr(content, end - content));
                if (!caption.empty()) table.caption = caption;
                pos = close ? close->end : body_end;
                continue;
            }
        } else if (tag->name == "tr") {
            close_cell(tag->begin);
            if (!tag->closing) {
                rows.emplace_back();
                current_row = &rows.back();
            } else {
                current_row = nullptr;
            }
        } else if (tag->name == "th" || tag->name == "td") {
            close_cell(tag->begin);
            if (!tag->closing) {
                current_cell.header = tag->name == "th";
                current_cell.colspan = span_attr(tag->attrs, "colspan");
                current_cell.rowspan = span_attr(tag->attrs, "rowspan");
                cell_content_start = tag->end;
            }
        }
        pos = tag->end;
    }
    close_cell(body_end);

    // expand col/rowspans by value duplication
    std::vector<std::vector<std::optional<std::pair<std::string, bool>>>> grid;
    std::vector<PendingSpan> carry;  // indexed by column
    for (const auto& row_tokens : rows) {
        std::vector<std::optional<std::pair<std::string, bool>>> row;
        std::size_t col = 0;
        auto place_carry = [&]() {
            while (col < carry.size() && carry[col].remaining_rows > 0) {
                for (int k = 0; k < carry[col].colspan; ++k) {
                    row.emplace_back(std::make_pair(carry[col].text, carry[col].header));
                }
                carry[col].remaining_rows -= 1;
                col += static_cast<std::size_t>(carry[col].colspan);
            }
        };
        place_carry();
        for (const auto& token : row_tokens) {
            const std::string text = html_to_text(token.raw);
            for (int k = 0; k < token.colspan; ++k) {
                row.emplace_back(std::make_pair(text, token.header));
            }
            if (token.rowspan > 1) {
                if (carry.size() < col + 1) carry.resize(col + 1);
                carry[col] = PendingSpan{text, token.header, token.rowspan - 1, token.colspan};
            }
            col += static_cast<std::size_t>(token.colspan);
            place_carry();
        }
        grid.push_back(std::move(row));
    }

    std::size_t width = 0;
    for (const auto& row : grid) width = std::max(width, row.size());
    table.grid.reserve(grid.size());
    std::vector<int> header_row;
    for (const auto& row : grid) {
        std::vector<std::string> cells;
        cells.reserve(width);
        bool all_header = !row.empty();
        for (const auto& cell : row) {
            cells.push_back(cell ? cell->first : std::string());
            if (!cell || !cell->second) all_header = false;
        }
        cells.resize(width);
        table.grid.push_back(std::move(cells));
        header_row.push_back(all_header ? 1 : 0);
    }
    int depth = 0;
    for (int flag : header_row) {
        if (!flag) break;
        ++depth;
    }
    table.header_depth = depth;
    return table;
}

}  // namespace

std::vector<RawTable> extract_tables(const std::string& html) {
    std::vector<RawTable> tables;
    std::size_t pos = 0;
    int source_index = 0;
    while (pos < html.size()) {
        auto tag = next_tag(html, pos);
        if (!tag) break;
        pos = tag->end;
        if (tag->name != "table" || tag->closing) continue;

        // find the matching close, nested tables included
        int depth = 1;
        std::size_t scan = tag->end;
        std::size_t body_end = html.size();
        while (depth > 0) {
            auto inner = next_tag(html, scan);
            if (!inner) break;
            if (inner->name == "table") depth += inner->closing ? -1 : 1;
            if (depth == 0) body_end = inner->begin;
            scan = inner->end;
        }

        if (!is_layout_or_navigation(tag->attrs)) {
            RawTable table = parse_table_segment(html, tag->end, body_end);
            table.source_index = source_index;
            if (!table.grid.empty()) {
                tables.push_back(std::move(table));
                ++source_index;
            }
        }
        pos = scan;
    }
    return tables;
}

}  // namespace freshtab
