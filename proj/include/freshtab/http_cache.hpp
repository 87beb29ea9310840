#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

namespace freshtab {

struct HttpRequest {
    std::string method = "GET";  // "GET" or "POST"
    std::string url;             // absolute, scheme + host + path + query
    std::string body;            // POST only
    std::string content_type;    // POST only
    std::string accept = "*/*";
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

// Network side only; swapped for a fake in tests.
class Transport {
public:
    virtual ~Transport() = default;
    // Throws NetworkError when no response could be obtained at all.
    virtual HttpResponse send(const HttpRequest& request) = 0;
};

std::unique_ptr<Transport> make_httplib_transport(std::string user_agent);

struct CacheStats {
    std::size_t hits = 0;
    std::size_t misses = 0;
    std::size_t network_requests = 0;  // transport attempts, retries included
};

// Disk-cached HTTP with per-host rate limiting and bounded exponential
// backoff. Cache layout: one file per request hash, content = raw response
// bytes, so reruns are fully offline-capable.
class CachedHttpClient {
public:
    struct Options {
        std::filesystem::path cache_dir;
        bool offline = false;   // cache misses become errors; never touches the network
        double max_rps = 2.0;   // per host
        int max_attempts = 3;   // on 429/5xx/transport failure
        std::chrono::milliseconds backoff_base{250};
    };

    CachedHttpClient(std::unique_ptr<Transport> transport, Options options);

    // Returns the response body (HTTP 200), serving from cache when present.
    // Throws HttpError on a non-retryable status or after retries are
    // exhausted, NetworkError when offline and uncached.
    std::string fetch(const HttpRequest& request);

    static std::string cache_key(const HttpRequest& request);

    CacheStats stats() const;
    const std::filesystem::path& cache_dir() const { return options_.cache_dir; }

private:
    std::filesystem::path cache_path(const std::string& key) const;
    void throttle(const std::string& host);

    std::unique_ptr<Transport> transport_;
    Options options_;
    mutable std::mutex mutex_;
    CacheStats stats_;
    std::map<std::string, std::chrono::steady_clock::time_point> last_request_;
};

// Atomic write-then-rename; safe for concurrent writers on one filesystem.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string url_host(const std::string& url);
std::string url_encode_component(std::string_view raw);

}  // namespace freshtab
