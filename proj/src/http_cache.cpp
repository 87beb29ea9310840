#include "freshtab/http_cache.hpp"

#include "freshtab/errors.hpp"
#include "freshtab/hash.hpp"

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace freshtab {
namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // path + query, at least "/"
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw NetworkError("not an absolute URL: " + url);
    }
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable_status(int status) {
    return status == 429 || status == 500 || status == 502 || status == 503 ||
           status == 504;
}

class HttplibTransport : public Transport {
public:
    explicit HttplibTransport(std::string user_agent) : user_agent_(std::move(user_agent)) {}

    HttpResponse send(const HttpRequest& request) override {
        const SplitUrl split = split_url(request.url);
        httplib::Client client(split.origin);
        client.set_connection_timeout(10);
        client.set_read_timeout(60);
        client.set_follow_location(true);
        httplib::Headers headers = {{"User-Agent", user_agent_},
                                    {"Accept", request.accept}};
        httplib::Result result =
            request.method == "POST"
                ? client.Post(split.path, headers, request.body, request.content_type)
                : client.Get(split.path, headers);
        if (!result) {
            throw NetworkError("transport failure for " + request.url + ": " +
                               httplib::to_string(result.error()));
        }
        return HttpResponse{result->status, result->body};
    }

private:
    std::string user_agent_;
};

}  // namespace

std::unique_ptr<Transport> make_httplib_transport(std::string user_agent) {
    return std::make_unique<HttplibTransport>(std::move(user_agent));
}

CachedHttpClient::CachedHttpClient(std::unique_ptr<Transport> transport, Options options)
    : transport_(std::move(transport)), options_(std::move(options)) {
    std::filesystem::create_directories(options_.cache_dir);
}

std::string CachedHttpClient::cache_key(const HttpRequest& request) {
    return sha256_hex(request.method + "\n" + request.url + "\n" + request.body);
}

std::filesystem::path CachedHttpClient::cache_path(const std::string& key) const {
    return options_.cache_dir / key;
}

void CachedHttpClient::throttle(const std::string& host) {
    if (options_.max_rps <= 0) return;
    const auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / options_.max_rps));
    std::chrono::steady_clock::time_point slot;
    {
        std::lock_guard lock(mutex_);
        const auto now = std::chrono::steady_clock::now();
        auto& last = last_request_[host];
        slot = std::max(now, last + interval);
        last = slot;
    }
    std::this_thread::sleep_until(slot);
}

std::string CachedHttpClient::fetch(const HttpRequest& request) {
    const std::string key = cache_key(request);
    const std::filesystem::path file = cache_path(key);

    {
        std::ifstream in(file, std::ios::binary);
        if (in) {
            std::ostringstream body;
            body << in.rdbuf();
            std::lock_guard lock(mutex_);
            ++stats_.hits;
            return body.str();
        }
    }

    if (options_.offline) {
        throw NetworkError("offline mode: no cached response for " + request.url);
    }

    const std::string host = url_host(request.url);
    int last_status = 0;
    std::string last_error;
    for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(options_.backoff_base * (1 << (attempt - 1)));
        }
        throttle(host);
        HttpResponse response;
        try {
            {
                std::lock_guard lock(mutex_);
                ++stats_.network_requests;
            }
            response = transport_->send(request);
        } catch (const NetworkError& e) {
            last_error = e.what();
            continue;
        }
        if (response.status == 200) {
            write_file_atomic(file, response.body);
            std::lock_guard lock(mutex_);
            ++stats_.misses;
            return std::move(response.body);
        }
        last_status = response.status;
        if (!retryable_status(response.status)) {
            throw HttpError(response.status,
                            "HTTP " + std::to_string(response.status) + " for " + request.url);
        }
    }
    if (last_status != 0) {
        throw HttpError(last_status, "HTTP " + std::to_string(last_status) + " for " +
                                         request.url + " (retries exhausted)");
    }
    throw NetworkError("network failure for " + request.url + " (retries exhausted): " +
                       last_error);
}

CacheStats CachedHttpClient::stats() const {
    std::lock_guard lock(mutex_);
    return stats_;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    static std::atomic<unsigned> counter{0};
    const std::filesystem::path parent = path.parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    const std::filesystem::path tmp =
        path.string() + ".tmp." + std::to_string(::getpid()) + "." +
        std::to_string(counter.fetch_add(1));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string url_host(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) return url;
    const auto host_start = scheme_end + 3;
    const auto host_end = url.find_first_of("/:?", host_start);
    return url.substr(host_start, host_end == std::string::npos ? std::string::npos
                                                                : host_end - host_start);
}

std::string url_encode_component(std::string_view raw) {
    static constexpr char hex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(raw.size());
    for (unsigned char c : raw) {
        const bool unreserved = std::isalnum(c) || c == '-' || c == '_' || c == '.' ||
                                c == '~';
        if (unreserved) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xf]);
        }
    }
    return out;
}

}  // namespace freshtab
