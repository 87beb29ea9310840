#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>

namespace freshtab {

// Narrow chat-completion contract. Model identity is data, not code; six
// models in the reference experiments go through this one surface.
struct GenerationRequest {
    std::string model;
    std::string prompt;
    std::string schema_name;  // "direct-insight" | "choice-insights" | "judge-verdict"
    std::string json_schema;  // structured-output constraint, serialized
    double temperature = 0.7;
};

struct BackendReply {
    std::string content;  // raw model output, expected to match the schema
};

// Stable key for recording and replay.
std::string request_hash(const GenerationRequest& request);

class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    // Throws BackendError when no reply could be obtained (unreachable,
    // auth, exhausted retries). Schema-level problems are NOT errors here;
    // callers inspect the content.
    virtual BackendReply complete(const GenerationRequest& request) = 0;
    virtual std::string id() const = 0;
};

// OpenAI-style chat completions over HTTP. Reads the bearer token from the
// environment variable named by token_env (empty token = no auth header).
class HttpChatBackend : public LlmBackend {
public:
    struct Options {
        std::string base_url;  // e.g. "http://localhost:11434/v1"
        std::string token_env = "FRESHTAB_API_TOKEN";
        int max_attempts = 3;
        int timeout_seconds = 120;
    };
    explicit HttpChatBackend(Options options) : options_(std::move(options)) {}

    BackendReply complete(const GenerationRequest& request) override;
    std::string id() const override { return "http:" + options_.base_url; }

private:
    Options options_;
};

// Replays a recorded session; lookups never touch the network. A request
// that was never recorded is a BackendError (the session is incomplete).
class ReplayBackend : public LlmBackend {
public:
    static ReplayBackend load(const std::filesystem::path& path);

    BackendReply complete(const GenerationRequest& request) override;
    std::string id() const override { return "replay"; }

    std::size_t size() const { return responses_.size(); }

private:
    std::map<std::string, std::string> responses_;
};

// Wraps a live backend and appends (request hash -> content) records to a
// replay file, one JSON object per line. LLM nondeterminism is quarantined
// at this boundary: everything downstream can rerun offline.
class RecordingBackend : public LlmBackend {
public:
    RecordingBackend(LlmBackend& inner, std::filesystem::path path);

    BackendReply complete(const GenerationRequest& request) override;
    std::string id() const override { return "recording:" + inner_.id(); }

private:
    LlmBackend& inner_;
    std::filesystem::path path_;
    std::mutex mutex_;
};

// Deterministic offline backend: schema-valid content derived from the
// request hash. Failure injection knobs drive the harness edge-case tests.
class MockBackend : public LlmBackend {
public:
    struct Options {
        std::set<std::size_t> empty_calls;      // 0-based call indexes -> empty insight
        std::set<std::size_t> malformed_calls;  // -> non-JSON content
        std::set<std::size_t> invalid_op_calls; // -> unknown operation name (choice)
    };
    MockBackend() = default;
    explicit MockBackend(Options options) : options_(std::move(options)) {}

    BackendReply complete(const GenerationRequest& request) override;
    std::string id() const override { return "mock"; }

    std::size_t calls() const { return calls_; }

private:
    Options options_;
    std::size_t calls_ = 0;
    std::mutex mutex_;
};

// Structured-output schemas published as part of the harness contract.
std::string direct_schema_json();
std::string choice_schema_json();
std::string judge_schema_json();

}  // namespace freshtab
