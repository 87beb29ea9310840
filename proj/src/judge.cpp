#include "freshtab/judge.hpp"

#include "freshtab/errors.hpp"
#include "freshtab/http_cache.hpp"
#include "freshtab/prompts.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>

namespace freshtab {

using nlohmann::json;

bool is_error_category(std::string_view name) {
    return name == "incorrect" || name == "not-checkable" || name == "misleading" ||
           name == "other";
}

namespace {

bool parse_judge_reply(const std::string& content, std::vector<ErrorSpan>& spans) {
    json doc = json::parse(content, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("errors") ||
        !doc["errors"].is_array()) {
        return false;
    }
    std::vector<ErrorSpan> parsed;
    for (const auto& item : doc["errors"]) {
        if (!item.is_object() || !item.contains("category") || !item["category"].is_string() ||
            !item.contains("span") || !item["span"].is_string()) {
            return false;
        }
        ErrorSpan span{item["category"].get<std::string>(), item["span"].get<std::string>()};
        if (!is_error_category(span.category)) return false;
        parsed.push_back(std::move(span));
    }
    spans = std::move(parsed);
    return true;
}

JudgeVerdict not_factual(const InsightRecord& record, std::string span_text) {
    JudgeVerdict verdict;
    verdict.entry_id = record.entry_id;
    verdict.setup = record.setup;
    verdict.slot = record.slot;
    verdict.factual = false;
    verdict.error_spans.push_back({"other", std::move(span_text)});
    return verdict;
}

}  // namespace

JudgeVerdict judge_record(const InsightRecord& record, const CleanTable& table,
                          LlmBackend& backend, const std::string& judge_model,
                          int schema_retries) {
    if (record.status != RecordStatus::kOk) {
        // empty / failed output counts as not entailed; no call spent on it
        return not_factual(record, "");
    }

    GenerationRequest request;
    request.model = judge_model;
    request.prompt = build_judge_prompt(table, record.text);
    request.schema_name = "judge-verdict";
    request.json_schema = judge_schema_json();
    request.temperature = 0.0;

    BackendReply reply = backend.complete(request);
    std::vector<ErrorSpan> spans;
    for (int attempt = 0; attempt < schema_retries && !parse_judge_reply(reply.content, spans);
         ++attempt) {
        reply = backend.complete(request);
    }
    if (!parse_judge_reply(reply.content, spans)) {
        return not_factual(record, "(judge schema failure)");
    }
    JudgeVerdict verdict;
    verdict.entry_id = record.entry_id;
    verdict.setup = record.setup;
    verdict.slot = record.slot;
    verdict.error_spans = std::move(spans);
    verdict.factual = verdict.error_spans.empty();
    return verdict;
}

std::vector<JudgeVerdict> judge_records(const std::vector<InsightRecord>& records,
                                        const BenchmarkManifest& manifest,
                                        LlmBackend& backend, const std::string& judge_model,
                                        int schema_retries) {
    std::map<std::string, const CleanTable*> tables;
    for (const auto& entry : manifest.entries) tables[entry.id] = &entry.table;
    std::vector<JudgeVerdict> verdicts;
    verdicts.reserve(records.size());
    for (const auto& record : records) {
        const auto it = tables.find(record.entry_id);
        if (it == tables.end()) {
            throw ValidationError("record references entry " + record.entry_id +
                                  " which is not in benchmark " + manifest.name);
        }
        verdicts.push_back(
            judge_record(record, *it->second, backend, judge_model, schema_retries));
    }
    return verdicts;
}

std::string verdicts_to_jsonl(const std::vector<JudgeVerdict>& verdicts) {
    std::ostringstream out;
    for (const auto& verdict : verdicts) {
        json spans = json::array();
        for (const auto& span : verdict.error_spans) {
            spans.push_back(json{{"category", span.category}, {"span", span.span}});
        }
        out << json{{"entry_id", verdict.entry_id},
                    {"error_spans", spans},
                    {"factual", verdict.factual},
                    {"setup", std::string(setup_name(verdict.setup))},
                    {"slot", verdict.slot}}
                   .dump()
            << "\n";
    }
    return out.str();
}

std::vector<JudgeVerdict> verdicts_from_jsonl(const std::string& text) {
    std::vector<JudgeVerdict> verdicts;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json doc = json::parse(line, nullptr, false);
        if (doc.is_discarded()) throw ValidationError("malformed verdict line");
        JudgeVerdict verdict;
        verdict.entry_id = doc.at("entry_id").get<std::string>();
        const auto setup = parse_setup(doc.at("setup").get<std::string>());
        if (!setup) throw ValidationError("unknown setup in verdicts file");
        verdict.setup = *setup;
        verdict.slot = doc.at("slot").get<int>();
        verdict.factual = doc.at("factual").get<bool>();
        for (const auto& item : doc.at("error_spans")) {
            verdict.error_spans.push_back(
                {item.at("category").get<std::string>(), item.at("span").get<std::string>()});
        }
        if (verdict.factual != verdict.error_spans.empty()) {
            throw ValidationError("verdict violates factual <=> no error spans");
        }
        verdicts.push_back(std::move(verdict));
    }
    return verdicts;
}

void save_verdicts(const std::vector<JudgeVerdict>& verdicts, const std::string& path) {
    write_file_atomic(path, verdicts_to_jsonl(verdicts));
}

std::vector<JudgeVerdict> load_verdicts(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read verdicts file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return verdicts_from_jsonl(text.str());
}

}  // namespace freshtab
