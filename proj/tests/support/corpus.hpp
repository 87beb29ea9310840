#pragma once

// The crafted pathological-table corpus shared by the cleaner unit tests
// and the acceptance suite: stacked headers, spans, reference markers,
// non-values, empty rows/columns, oversize bodies, future-event shells.

#include "freshtab/cleaner.hpp"
#include "freshtab/table.hpp"
#include "freshtab/utf8.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace freshtab::testsupport {

struct CorpusCase {
    std::string name;
    RawTable raw;
    std::optional<RejectReason> expect_reject;  // nullopt = must be accepted
    // Extra acceptance-side checks; returns "" when satisfied.
    std::function<std::string(const CleanTable&)> check;
};

inline TableLimits corpus_limits() {
    TableLimits limits;
    limits.min_rows = 4;
    limits.max_rows = 40;
    limits.min_cols = 3;
    limits.max_cols = 10;
    limits.min_nonempty_ratio = 0.5;
    limits.max_serialized_chars = 3000;
    limits.max_cell_chars = 200;
    return limits;
}

inline RawTable make_raw(std::vector<std::vector<std::string>> grid, int header_depth,
                         std::optional<std::string> caption = std::nullopt) {
    RawTable raw;
    raw.page = PageRef{"Corpus page", "https://en.wikipedia.org/wiki/Corpus_page",
                       Domain::kOther};
    raw.grid = std::move(grid);
    raw.header_depth = header_depth;
    raw.caption = std::move(caption);
    return raw;
}

inline std::vector<std::vector<std::string>> plain_grid(int rows, int cols,
                                                        const std::string& stem = "v") {
    std::vector<std::vector<std::string>> grid;
    grid.emplace_back();
    for (int c = 0; c < cols; ++c) grid.back().push_back("H" + std::to_string(c));
    for (int r = 0; r < rows; ++r) {
        grid.emplace_back();
        for (int c = 0; c < cols; ++c) {
            grid.back().push_back(stem + std::to_string(r) + "_" + std::to_string(c));
        }
    }
    return grid;
}

inline std::vector<CorpusCase> pathological_corpus() {
    std::vector<CorpusCase> corpus;
    auto add = [&](std::string name, RawTable raw, std::optional<RejectReason> reject,
                   std::function<std::string(const CleanTable&)> check = nullptr) {
        corpus.push_back({std::move(name), std::move(raw), reject, std::move(check)});
    };

    // 1: stacked two-row header with span-expanded group labels
    {
        std::vector<std::vector<std::string>> grid = {
            {"Team", "Home", "Home", "Away", "Away"},
            {"Team", "Won", "Lost", "Won", "Lost"},
        };
        for (int r = 0; r < 6; ++r) {
            grid.push_back({"Club " + std::to_string(r), std::to_string(r + 1),
                            std::to_string(r), std::to_string(7 - r), std::to_string(r % 3)});
        }
        add("stacked-header-flattened", make_raw(std::move(grid), 2), std::nullopt,
            [](const CleanTable& t) {
                if (t.header[1] != "Home – Won") return "expected 'Home – Won' join";
                if (t.header[0] != "Team") return "expected deduped 'Team' header";
                return "";
            });
    }

    // 2: colspan duplication arrives as repeated values; content preserved
    {
        auto grid = plain_grid(5, 4);
        grid[2][1] = grid[2][2] = "merged";
        add("span-duplicated-values", make_raw(std::move(grid), 1), std::nullopt);
    }

    // 3: reference markers stripped, values kept
    {
        auto grid = plain_grid(5, 4);
        grid[1][0] = "Arsenal[1]";
        grid[1][1] = "12[2]";
        grid[2][2] = "Leeds[note 3]";
        grid[3][3] = "7[citation 4]";
        grid[4][0] = "Perth[12]";
        grid[5][1] = "3[a 1]";
        add("reference-markers-stripped", make_raw(std::move(grid), 1), std::nullopt,
            [](const CleanTable& t) {
                if (t.rows[0][0] != "Arsenal") return "marker not stripped from Arsenal[1]";
                if (t.rows[0][1] != "12") return "marker not stripped from 12[2]";
                if (t.rows[1][2] != "Leeds") return "marker not stripped from Leeds[note 3]";
                if (t.rows[2][3] != "7") return "marker not stripped from 7[citation 4]";
                if (t.rows[3][0] != "Perth") return "marker not stripped from Perth[12]";
                if (t.rows[4][1] != "3") return "marker not stripped from 3[a 1]";
                return "";
            });
    }

    // 4: non-values consolidated to empty cells
    {
        auto grid = plain_grid(6, 4);
        grid[1][1] = "—";
        grid[2][2] = "-";
        grid[3][3] = "N/A";
        grid[4][0] = "TBD";
        grid[5][1] = "?";
        add("non-values-consolidated", make_raw(std::move(grid), 1), std::nullopt,
            [](const CleanTable& t) {
                if (!t.rows[0][1].empty()) return "em dash not consolidated";
                if (!t.rows[3][0].empty()) return "TBD not consolidated";
                return "";
            });
    }

    // 5: fully empty data row dropped
    {
        auto grid = plain_grid(5, 4);
        grid[3] = {"", "", "", ""};
        add("empty-row-dropped", make_raw(std::move(grid), 1), std::nullopt,
            [](const CleanTable& t) {
                return t.rows.size() == 4 ? "" : "expected the empty row to be dropped";
            });
    }

    // 6: fully empty column dropped (header included)
    {
        auto grid = plain_grid(6, 5);
        for (std::size_t r = 1; r < grid.size(); ++r) grid[r][2] = "";
        add("empty-column-dropped", make_raw(std::move(grid), 1), std::nullopt,
            [](const CleanTable& t) {
                return t.header.size() == 4 ? "" : "expected the empty column to be dropped";
            });
    }

    // 7: every cell a dash -> consolidation empties the body
    {
        std::vector<std::vector<std::string>> grid = {{"Date", "Round", "Venue"}};
        for (int r = 0; r < 6; ++r) grid.push_back({"—", "—", "—"});
        add("all-dashes", make_raw(std::move(grid), 1), RejectReason::kTooEmpty);
    }

    // 8: oversize body, trailing rows dropped until it fits
    {
        auto grid = plain_grid(40, 4, "somewhat-long-cell-value-");
        add("oversize-shortened", make_raw(std::move(grid), 1), std::nullopt,
            [](const CleanTable& t) {
                if (serialized_length(t) > 3000) return "still above the size cap";
                if (t.rows.size() >= 40) return "no rows were dropped";
                return "";
            });
    }

    // 9: irreducibly oversize (huge cells at minimum row count)
    {
        std::string big(190, 'x');
        std::vector<std::vector<std::string>> grid = {{"A", "B", "C", "D", "E"}};
        for (int r = 0; r < 6; ++r) {
            grid.push_back({big, big, big, big, big});
        }
        add("oversize-irreducible", make_raw(std::move(grid), 1),
            RejectReason::kTooLargeAfterShortening);
    }

    // 10: tiny table
    add("too-small-grid", make_raw(plain_grid(1, 2), 1), RejectReason::kTooSmall);

    // 11: row count above max_rows is capped by shortening
    add("row-capped", make_raw(plain_grid(45, 3), 1), std::nullopt,
        [](const CleanTable& t) {
            return t.rows.size() == 40 ? "" : "expected rows capped at max_rows";
        });

    // 12: too many columns cannot be shortened away
    add("too-wide", make_raw(plain_grid(6, 12), 1), RejectReason::kTooLargeAfterShortening);

    // 13: too few columns
    add("too-narrow", make_raw(plain_grid(6, 2), 1), RejectReason::kTooSmall);

    // 14: future-event shell, structurally intact but mostly empty
    {
        std::vector<std::vector<std::string>> grid = {{"No.", "Date", "Opponent", "Result"}};
        for (int r = 0; r < 8; ++r) {
            grid.push_back({std::to_string(r + 1), r == 0 ? "2025-09-01" : "",
                            r == 1 ? "Belmont" : "", ""});
        }
        add("future-event-shell", make_raw(std::move(grid), 1), RejectReason::kTooEmpty);
    }

    // 15: no header rows at all
    {
        auto grid = plain_grid(6, 4);
        add("headerless", make_raw(std::move(grid), 0), RejectReason::kHeaderUnusable);
    }

    // 16: header rows only
    {
        std::vector<std::vector<std::string>> grid = {{"A", "B", "C"}};
        add("header-only", make_raw(std::move(grid), 1), RejectReason::kTooSmall);
    }

    // 17: header cell beyond the cell cap is unusable, not truncatable
    {
        auto grid = plain_grid(6, 4);
        grid[0][1] = std::string(250, 'h');
        add("header-cell-overlong", make_raw(std::move(grid), 1),
            RejectReason::kHeaderUnusable);
    }

    // 18: data cell beyond the cap is truncated
    {
        auto grid = plain_grid(6, 4);
        grid[2][1] = std::string(300, 'd');
        add("data-cell-truncated", make_raw(std::move(grid), 1), std::nullopt,
            [](const CleanTable& t) {
                return utf8_length(t.rows[1][1]) == 200 ? ""
                                                        : "expected truncation to 200 chars";
            });
    }

    // 19: header present but blank
    {
        auto grid = plain_grid(6, 4);
        for (auto& cell : grid[0]) cell = "";
        add("blank-header", make_raw(std::move(grid), 1), RejectReason::kHeaderUnusable);
    }

    // 20: non-value caption is dropped, table survives
    {
        add("non-value-caption", make_raw(plain_grid(6, 4), 1, "—"), std::nullopt,
            [](const CleanTable& t) {
                return t.caption.has_value() ? "expected the caption to be dropped" : "";
            });
    }

    // 21: whitespace-only cells behave like empty ones
    {
        auto grid = plain_grid(5, 4);
        grid[2] = {"   ", " ", "\t", " "};
        add("whitespace-row-dropped", make_raw(std::move(grid), 1), std::nullopt,
            [](const CleanTable& t) {
                return t.rows.size() == 4 ? "" : "expected the whitespace row to drop";
            });
    }

    // 22: sup-reference remnants from extraction
    {
        auto grid = plain_grid(5, 4);
        grid[1][1] = "7[2]";
        grid[1][2] = "Madrid[b 1]";
        add("sup-reference-remnants", make_raw(std::move(grid), 1), std::nullopt,
            [](const CleanTable& t) {
                if (t.rows[0][1] != "7") return "inline marker survived";
                if (t.rows[0][2] != "Madrid") return "lettered marker survived";
                return "";
            });
    }

    // 23: ragged grid (extraction contract violated upstream)
    {
        auto grid = plain_grid(5, 4);
        grid[3].pop_back();
        add("ragged-grid", make_raw(std::move(grid), 1), RejectReason::kHeaderUnusable);
    }

    // 24: mixed multirow header where one stack level is blank
    {
        std::vector<std::vector<std::string>> grid = {
            {"", "Results", "Results", "Notes"},
            {"Rank", "Gold", "Silver", "Notes"},
        };
        for (int r = 0; r < 6; ++r) {
            grid.push_back({std::to_string(r + 1), std::to_string(10 - r),
                            std::to_string(r + 2), "ok"});
        }
        add("partially-blank-stacked-header", make_raw(std::move(grid), 2), std::nullopt,
            [](const CleanTable& t) {
                if (t.header[0] != "Rank") return "blank parent should vanish in the join";
                if (t.header[1] != "Results – Gold") return "expected 'Results – Gold'";
                if (t.header[3] != "Notes") return "duplicate stack levels should dedupe";
                return "";
            });
    }

    // 25: ratio exactly at the threshold stays in
    {
        std::vector<std::vector<std::string>> grid = {{"A", "B", "C", "D"}};
        for (int r = 0; r < 6; ++r) {
            grid.push_back({"v" + std::to_string(r), r % 2 == 0 ? "w" : "", "", "x"});
        }
        // column C drops as empty; the rest fills 15/18 of the cells
        add("ratio-above-threshold", make_raw(std::move(grid), 1), std::nullopt);
    }

    return corpus;
}

}  // namespace freshtab::testsupport
