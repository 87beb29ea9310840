#pragma once

#include "freshtab/config.hpp"
#include "freshtab/table.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace freshtab {

enum class RejectReason {
    kTooSmall,
    kTooLargeAfterShortening,
    kTooEmpty,
    kHeaderUnusable,
};

std::string_view reject_reason_name(RejectReason reason);

struct CleanOutcome {
    std::optional<CleanTable> table;
    std::optional<RejectReason> reason;
    int source_index = 0;

    bool accepted() const { return table.has_value(); }
};

// Normalization pipeline, applied in this order:
//   1. flatten stacked header rows (parent and child names joined " – ")
//   2. strip bracketed reference markers from every cell
//   3. consolidate non-values ("—", "-", "N/A", "TBD", "?", ...) to empty
//   4. drop fully empty rows and columns
//   5. truncate over-long cells (a header cell needing truncation rejects
//      the whole table)
//   6. shorten: drop trailing rows while the serialization exceeds
//      max_serialized_chars, never below min_rows
//   7. verify every CleanTable invariant, or reject with a reason
// Idempotent: cleaning an already-clean table changes nothing.
CleanOutcome clean_table(const RawTable& raw, const TableLimits& limits);

// Among accepted tables of one page: highest non-empty-cell ratio, then
// most rows, then earliest position on the page.
std::optional<CleanTable> pick_table(const std::vector<CleanOutcome>& outcomes);

// Fraction of non-empty data cells (header excluded); 0 for no cells.
double nonempty_ratio(const std::vector<std::vector<std::string>>& rows);

// Bracketed citation tokens: at most 12 chars between the brackets,
// containing a digit or a note/citation keyword. Conservative on purpose —
// a missed marker is tolerable, deleted data is not.
bool is_reference_marker(std::string_view bracket_content);
std::string strip_reference_markers(std::string_view cell);

// "" if the trimmed cell is one of the recognized non-value tokens.
std::string consolidate_nonvalues(std::string cell);

// Empty when the table satisfies every CleanTable invariant under the
// given limits; otherwise the name of the first violated one.
std::string check_clean_invariants(const CleanTable& table, const TableLimits& limits);

}  // namespace freshtab
