#pragma once

#include "freshtab/backend.hpp"
#include "freshtab/curator.hpp"
#include "freshtab/genharness.hpp"

#include <string>
#include <vector>

namespace freshtab {

struct ErrorSpan {
    std::string category;  // incorrect | not-checkable | misleading | other
    std::string span;      // words quoted from the insight

    bool operator==(const ErrorSpan&) const = default;
};

// factual <=> error_spans empty, by construction everywhere a verdict is
// made. Empty/failed generations and unparseable judge replies are
// non-factual with a single "other" span, following the convention that an
// empty output is not entailed.
struct JudgeVerdict {
    std::string entry_id;
    Setup setup = Setup::kDirect;
    int slot = 0;
    bool factual = false;
    std::vector<ErrorSpan> error_spans;

    bool operator==(const JudgeVerdict&) const = default;
};

bool is_error_category(std::string_view name);

// Non-ok records are auto-verdicted without any backend call.
JudgeVerdict judge_record(const InsightRecord& record, const CleanTable& table,
                          LlmBackend& backend, const std::string& judge_model,
                          int schema_retries = 2);

// Joins records to their tables through the manifest. Records whose entry
// is missing from the manifest are an error.
std::vector<JudgeVerdict> judge_records(const std::vector<InsightRecord>& records,
                                        const BenchmarkManifest& manifest,
                                        LlmBackend& backend, const std::string& judge_model,
                                        int schema_retries = 2);

std::string verdicts_to_jsonl(const std::vector<JudgeVerdict>& verdicts);
std::vector<JudgeVerdict> verdicts_from_jsonl(const std::string& text);
void save_verdicts(const std::vector<JudgeVerdict>& verdicts, const std::string& path);
std::vector<JudgeVerdict> load_verdicts(const std::string& path);

}  // namespace freshtab
