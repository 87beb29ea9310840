#include "freshtab/backend.hpp"

#include "freshtab/errors.hpp"
#include "freshtab/hash.hpp"
#include "freshtab/ops.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace freshtab {

using nlohmann::json;

std::string request_hash(const GenerationRequest& request) {
    char temp[32];
    std::snprintf(temp, sizeof temp, "%.6g", request.temperature);
    std::string material;
    material += request.model;
    material += '\x1f';
    material += request.schema_name;
    material += '\x1f';
    material += temp;
    material += '\x1f';
    material += request.json_schema;
    material += '\x1f';
    material += request.prompt;
    return sha256_hex(material);
}

BackendReply HttpChatBackend::complete(const GenerationRequest& request) {
    json schema = json::parse(request.json_schema, nullptr, false);
    if (schema.is_discarded()) schema = json::object();
    const json body = {
        {"model", request.model},
        {"messages", json::array({json{{"role", "user"}, {"content", request.prompt}}})},
        {"temperature", request.temperature},
        {"response_format",
         {{"type", "json_schema"},
          {"json_schema", {{"name", request.schema_name}, {"schema", schema}}}}},
    };

    const auto scheme_end = options_.base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw BackendError("backend base_url must be absolute: " + options_.base_url);
    }
    const auto path_start = options_.base_url.find('/', scheme_end + 3);
    const std::string origin = path_start == std::string::npos
                                   ? options_.base_url
                                   : options_.base_url.substr(0, path_start);
    const std::string prefix =
        path_start == std::string::npos ? "" : options_.base_url.substr(path_start);

    httplib::Headers headers;
    if (!options_.token_env.empty()) {
        if (const char* token = std::getenv(options_.token_env.c_str());
            token != nullptr && *token != '\0') {
            headers.emplace("Authorization", std::string("Bearer ") + token);
        }
    }

    std::string last_error;
    for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(250 << attempt));
        httplib::Client client(origin);
        client.set_connection_timeout(10);
        client.set_read_timeout(options_.timeout_seconds);
        auto result =
            client.Post(prefix + "/chat/completions", headers, body.dump(), "application/json");
        if (!result) {
            last_error = httplib::to_string(result.error());
            continue;
        }
        if (result->status != 200) {
            last_error = "HTTP " + std::to_string(result->status);
            if (result->status >= 500 || result->status == 429) continue;
            break;
        }
        json doc = json::parse(result->body, nullptr, false);
        if (doc.is_discarded() || !doc.contains("choices") || doc["choices"].empty()) {
            last_error = "response without choices";
            continue;
        }
        const json& message = doc["choices"][0];
        if (message.contains("message") && message["message"].contains("content")) {
            return BackendReply{message["message"]["content"].get<std::string>()};
        }
        last_error = "choice without message content";
    }
    throw BackendError("backend unreachable (" + options_.base_url + "): " + last_error);
}

ReplayBackend ReplayBackend::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw BackendError("cannot read replay file: " + path.string());
    ReplayBackend backend;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.contains("hash") || !record.contains("content")) {
            throw BackendError("malformed replay record: " + line.substr(0, 80));
        }
        backend.responses_[record["hash"].get<std::string>()] =
            record["content"].get<std::string>();
    }
    return backend;
}

BackendReply ReplayBackend::complete(const GenerationRequest& request) {
    const auto it = responses_.find(request_hash(request));
    if (it == responses_.end()) {
        throw BackendError("replay file has no response for this request (model " +
                           request.model + ", schema " + request.schema_name + ")");
    }
    return BackendReply{it->second};
}

RecordingBackend::RecordingBackend(LlmBackend& inner, std::filesystem::path path)
    : inner_(inner), path_(std::move(path)) {}

BackendReply RecordingBackend::complete(const GenerationRequest& request) {
    BackendReply reply = inner_.complete(request);
    const json record = {{"content", reply.content}, {"hash", request_hash(request)}};
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    out << record.dump() << "\n";
    return reply;
}

BackendReply MockBackend::complete(const GenerationRequest& request) {
    std::size_t call;
    {
        std::lock_guard lock(mutex_);
        call = calls_++;
    }
    if (options_.malformed_calls.contains(call)) {
        return BackendReply{"not a structured reply"};
    }
    const std::string h = request_hash(request);
    const auto& ops = logical_operations();
    auto pseudo_value = [&](std::size_t offset) {
        return std::to_string((fnv1a64(h) >> offset) % 90 + 10);
    };
    if (request.schema_name == "choice-insights") {
        json insights = json::array();
        for (int i = 0; i < 5; ++i) {
            const std::string op_name =
                options_.invalid_op_calls.contains(call) && i == 0
                    ? "trend"
                    : ops[(fnv1a64(h) + static_cast<std::size_t>(i)) % ops.size()].name;
            const std::string text =
                options_.empty_calls.contains(call) && i == 0
                    ? ""
                    : "Group " + h.substr(static_cast<std::size_t>(i) + 1, 2) +
                          " records value " + pseudo_value(static_cast<std::size_t>(i)) +
                          " in slot " + std::to_string(i) + ".";
            insights.push_back(json{{"insight", text}, {"operation", op_name}});
        }
        return BackendReply{json{{"insights", insights}}.dump()};
    }
    if (request.schema_name == "judge-verdict") {
        return BackendReply{json{{"errors", json::array()}}.dump()};
    }
    const std::string text = options_.empty_calls.contains(call)
                                 ? ""
                                 : "Row group " + h.substr(0, 2) + " shows value " +
                                       pseudo_value(3) + " across " + pseudo_value(7) +
                                       " cells.";
    return BackendReply{
        json{{"insight", text}, {"reasoning", "Scanned the table; sample " + h.substr(0, 8)}}
            .dump()};
}

std::string direct_schema_json() {
    static const std::string schema =
        json{{"type", "object"},
             {"properties",
              {{"reasoning", {{"type", "string"}}}, {"insight", {{"type", "string"}}}}},
             {"required", json::array({"reasoning", "insight"})}}
            .dump();
    return schema;
}

std::string choice_schema_json() {
    json names = json::array();
    for (const auto& op : logical_operations()) names.push_back(op.name);
    static const std::string schema =
        json{{"type", "object"},
             {"properties",
              {{"insights",
                {{"type", "array"},
                 {"minItems", 5},
                 {"maxItems", 5},
                 {"items",
                  {{"type", "object"},
                   {"properties",
                    {{"operation", {{"type", "string"}, {"enum", names}}},
                     {"insight", {{"type", "string"}}}}},
                   {"required", json::array({"operation", "insight"})}}}}}}},
             {"required", json::array({"insights"})}}
            .dump();
    return schema;
}

std::string judge_schema_json() {
    static const std::string schema =
        json{{"type", "object"},
             {"properties",
              {{"errors",
                {{"type", "array"},
                 {"items",
                  {{"type", "object"},
                   {"properties",
                    {{"category",
                      {{"type", "string"},
                       {"enum", json::array({"incorrect", "not-checkable", "misleading",
                                             "other"})}}},
                     {"span", {{"type", "string"}}}}},
                   {"required", json::array({"category", "span"})}}}}}}},
             {"required", json::array({"errors"})}}
            .dump();
    return schema;
}

}  // namespace freshtab
