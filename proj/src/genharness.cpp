#include "freshtab/genharness.hpp"

#include "freshtab/errors.hpp"
#include "freshtab/http_cache.hpp"
#include "freshtab/ops.hpp"
#include "freshtab/prompts.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace freshtab {

using nlohmann::json;

std::string_view record_status_name(RecordStatus status) {
    switch (status) {
        case RecordStatus::kOk: return "ok";
        case RecordStatus::kEmpty: return "empty";
        case RecordStatus::kSchemaFailure: return "schema-failure";
    }
    return "schema-failure";
}

std::optional<RecordStatus> parse_record_status(std::string_view name) {
    if (name == "ok") return RecordStatus::kOk;
    if (name == "empty") return RecordStatus::kEmpty;
    if (name == "schema-failure") return RecordStatus::kSchemaFailure;
    return std::nullopt;
}

std::string_view setup_name(Setup setup) {
    return setup == Setup::kDirect ? "direct" : "choice";
}

std::optional<Setup> parse_setup(std::string_view name) {
    if (name == "direct") return Setup::kDirect;
    if (name == "choice") return Setup::kChoice;
    return std::nullopt;
}

namespace {

using RecordKey = std::tuple<std::string, Setup, int>;

std::map<RecordKey, InsightRecord> index_records(const std::vector<InsightRecord>& records) {
    std::map<RecordKey, InsightRecord> index;
    for (const auto& record : records) {
        index[{record.entry_id, record.setup, record.slot}] = record;
    }
    return index;
}

void emit(std::vector<InsightRecord>& out, const RunOptions& options, InsightRecord record) {
    if (options.sink) options.sink(record);
    out.push_back(std::move(record));
}

// Parses a direct reply. Returns false on schema violation.
bool parse_direct_reply(const std::string& content, std::string& insight) {
    json doc = json::parse(content, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("insight") ||
        !doc["insight"].is_string() || !doc.contains("reasoning")) {
        return false;
    }
    insight = doc["insight"].get<std::string>();
    return true;
}

struct ChoiceItem {
    std::string operation;
    std::string insight;
};

bool parse_choice_reply(const std::string& content, std::vector<ChoiceItem>& items) {
    json doc = json::parse(content, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("insights") ||
        !doc["insights"].is_array() || doc["insights"].size() != 5) {
        return false;
    }
    std::vector<ChoiceItem> parsed;
    for (const auto& item : doc["insights"]) {
        if (!item.is_object() || !item.contains("operation") || !item["operation"].is_string() ||
            !item.contains("insight") || !item["insight"].is_string()) {
            return false;
        }
        parsed.push_back({item["operation"].get<std::string>(),
                          item["insight"].get<std::string>()});
    }
    items = std::move(parsed);
    return true;
}

BackendReply complete_with_retries(LlmBackend& backend, const GenerationRequest& request,
                                   int retries, const std::function<bool(const std::string&)>&
                                                     acceptable) {
    BackendReply reply = backend.complete(request);
    for (int attempt = 0; attempt < retries && !acceptable(reply.content); ++attempt) {
        reply = backend.complete(request);
    }
    return reply;
}

}  // namespace

std::vector<InsightRecord> run_direct(const std::vector<BenchmarkEntry>& entries,
                                      LlmBackend& backend, const PipelineConfig& cfg,
                                      const RunOptions& options) {
    const std::string benchmark_name = dataset_name(cfg);
    const auto done = index_records(options.resume_from);
    std::vector<InsightRecord> records;
    records.reserve(entries.size() * static_cast<std::size_t>(cfg.ops_per_table));

    for (const auto& entry : entries) {
        for (int slot = 0; slot < cfg.ops_per_table; ++slot) {
            if (const auto it = done.find({entry.id, Setup::kDirect, slot}); it != done.end()) {
                records.push_back(it->second);
                continue;
            }
            const std::string& op_name =
                entry.operations[static_cast<std::size_t>(slot)];
            const LogicalOperation* op = find_operation(op_name);
            if (op == nullptr) {
                throw ValidationError("entry " + entry.id + " carries unknown operation '" +
                                      op_name + "'");
            }
            GenerationRequest request;
            request.model = options.model;
            request.prompt = build_direct_prompt(entry.table, *op);
            request.schema_name = "direct-insight";
            request.json_schema = direct_schema_json();
            request.temperature = options.temperature;

            std::string insight;
            const BackendReply reply = complete_with_retries(
                backend, request, options.schema_retries,
                [&](const std::string& content) {
                    std::string probe;
                    return parse_direct_reply(content, probe);
                });

            InsightRecord record;
            record.entry_id = entry.id;
            record.benchmark = benchmark_name;
            record.model = options.model;
            record.setup = Setup::kDirect;
            record.slot = slot;
            record.operation = op_name;
            record.temperature = options.temperature;
            if (!parse_direct_reply(reply.content, insight)) {
                record.status = RecordStatus::kSchemaFailure;
                record.raw = reply.content;
            } else if (insight.empty()) {
                record.status = RecordStatus::kEmpty;
                record.raw = reply.content;
            } else {
                record.status = RecordStatus::kOk;
                record.text = std::move(insight);
            }
            emit(records, options, std::move(record));
        }
    }
    return records;
}

std::vector<InsightRecord> run_choice(const std::vector<BenchmarkEntry>& entries,
                                      LlmBackend& backend, const PipelineConfig& cfg,
                                      const RunOptions& options) {
    const std::string benchmark_name = dataset_name(cfg);
    const auto done = index_records(options.resume_from);
    std::vector<InsightRecord> records;
    records.reserve(entries.size() * 5);

    for (const auto& entry : entries) {
        bool resumed = true;
        for (int slot = 0; slot < 5; ++slot) {
            if (!done.contains({entry.id, Setup::kChoice, slot})) {
                resumed = false;
                break;
            }
        }
        if (resumed) {
            for (int slot = 0; slot < 5; ++slot) {
                records.push_back(done.at({entry.id, Setup::kChoice, slot}));
            }
            continue;
        }

        GenerationRequest request;
        request.model = options.model;
        request.prompt = build_choice_prompt(entry.table);
        request.schema_name = "choice-insights";
        request.json_schema = choice_schema_json();
        request.temperature = options.temperature;

        std::vector<ChoiceItem> items;
        const BackendReply reply = complete_with_retries(
            backend, request, options.schema_retries, [&](const std::string& content) {
                std::vector<ChoiceItem> probe;
                return parse_choice_reply(content, probe);
            });
        const bool parsed = parse_choice_reply(reply.content, items);

        for (int slot = 0; slot < 5; ++slot) {
            InsightRecord record;
            record.entry_id = entry.id;
            record.benchmark = benchmark_name;
            record.model = options.model;
            record.setup = Setup::kChoice;
            record.slot = slot;
            record.temperature = options.temperature;
            if (!parsed) {
                record.status = RecordStatus::kSchemaFailure;
                record.raw = reply.content;
            } else {
                const ChoiceItem& item = items[static_cast<std::size_t>(slot)];
                record.operation = item.operation;
                if (!is_operation_name(item.operation)) {
                    record.status = RecordStatus::kSchemaFailure;
                    record.raw = reply.content;
                } else if (item.insight.empty()) {
                    record.status = RecordStatus::kEmpty;
                } else {
                    record.status = RecordStatus::kOk;
                    record.text = item.insight;
                }
            }
            emit(records, options, std::move(record));
        }
    }
    return records;
}

std::string records_to_jsonl(const std::vector<InsightRecord>& records) {
    std::ostringstream out;
    for (const auto& record : records) {
        json line = {
            {"benchmark", record.benchmark},
            {"entry_id", record.entry_id},
            {"model", record.model},
            {"operation", record.operation},
            {"setup", std::string(setup_name(record.setup))},
            {"slot", record.slot},
            {"status", std::string(record_status_name(record.status))},
            {"temperature", record.temperature},
            {"text", record.text},
        };
        if (!record.raw.empty()) line["raw"] = record.raw;
        out << line.dump() << "\n";
    }
    return out.str();
}

std::vector<InsightRecord> records_from_jsonl(const std::string& text) {
    std::vector<InsightRecord> records;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json doc = json::parse(line, nullptr, false);
        if (doc.is_discarded()) throw ValidationError("malformed records line: " + line);
        InsightRecord record;
        record.benchmark = doc.at("benchmark").get<std::string>();
        record.entry_id = doc.at("entry_id").get<std::string>();
        record.model = doc.at("model").get<std::string>();
        record.operation = doc.at("operation").get<std::string>();
        const auto setup = parse_setup(doc.at("setup").get<std::string>());
        if (!setup) throw ValidationError("unknown setup in records file");
        record.setup = *setup;
        record.slot = doc.at("slot").get<int>();
        const auto status = parse_record_status(doc.at("status").get<std::string>());
        if (!status) throw ValidationError("unknown status in records file");
        record.status = *status;
        record.temperature = doc.at("temperature").get<double>();
        record.text = doc.at("text").get<std::string>();
        if (doc.contains("raw")) record.raw = doc.at("raw").get<std::string>();
        if (record.status == RecordStatus::kOk && record.text.empty()) {
            throw ValidationError("ok record with empty text: " + record.entry_id);
        }
        records.push_back(std::move(record));
    }
    return records;
}

void save_records(const std::vector<InsightRecord>& records, const std::string& path) {
    write_file_atomic(path, records_to_jsonl(records));
}

std::vector<InsightRecord> load_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read records file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return records_from_jsonl(text.str());
}

}  // namespace freshtab
