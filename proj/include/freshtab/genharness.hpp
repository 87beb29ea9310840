#pragma once

#include "freshtab/backend.hpp"
#include "freshtab/curator.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace freshtab {

enum class RecordStatus { kOk, kEmpty, kSchemaFailure };

std::string_view record_status_name(RecordStatus status);
std::optional<RecordStatus> parse_record_status(std::string_view name);

enum class Setup { kDirect, kChoice };

std::string_view setup_name(Setup setup);
std::optional<Setup> parse_setup(std::string_view name);

// One generated insight. Failures are first-class: an empty or
// schema-violating reply is recorded with its status, never dropped, so
// failure rates stay measurable.
struct InsightRecord {
    std::string entry_id;
    std::string benchmark;
    std::string model;
    Setup setup = Setup::kDirect;
    int slot = 0;              // 0..ops_per_table-1
    std::string operation;     // prescribed (direct) or model-chosen (choice)
    std::string text;
    RecordStatus status = RecordStatus::kOk;
    std::string raw;           // raw reply, kept for non-ok records
    double temperature = 0.7;

    bool operator==(const InsightRecord&) const = default;
};

struct RunOptions {
    std::string model = "mock";
    double temperature = 0.7;
    int schema_retries = 2;  // then the failure is recorded
    // Called as each record is finalized (checkpointing); may be empty.
    std::function<void(const InsightRecord&)> sink;
    // Records already on disk from an aborted run; matching (entry, setup,
    // slot) work is skipped and the old records are returned as-is.
    std::vector<InsightRecord> resume_from;
};

// ops_per_table calls per entry, one prescribed operation each.
// Backend-unreachable aborts mid-run with BackendError; records emitted so
// far have already been sunk, so the run is resumable.
std::vector<InsightRecord> run_direct(const std::vector<BenchmarkEntry>& entries,
                                      LlmBackend& backend, const PipelineConfig& cfg,
                                      const RunOptions& options);

// One call per entry, five records out. A model-declared operation outside
// the nine surfaces as a schema failure on that record.
std::vector<InsightRecord> run_choice(const std::vector<BenchmarkEntry>& entries,
                                      LlmBackend& backend, const PipelineConfig& cfg,
                                      const RunOptions& options);

std::string records_to_jsonl(const std::vector<InsightRecord>& records);
std::vector<InsightRecord> records_from_jsonl(const std::string& text);
void save_records(const std::vector<InsightRecord>& records, const std::string& path);
std::vector<InsightRecord> load_records(const std::string& path);

}  // namespace freshtab
