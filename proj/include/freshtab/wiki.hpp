#pragma once

#include "freshtab/dates.hpp"
#include "freshtab/http_cache.hpp"

#include <string>

namespace freshtab {

HttpRequest wiki_revision_request(const std::string& api_base, const std::string& title);
HttpRequest wiki_html_request(const std::string& api_base, const std::string& title);

// MediaWiki client over the shared cached HTTP layer. api_base is the /w
// prefix, e.g. "https://en.wikipedia.org/w".
class WikiClient {
public:
    WikiClient(CachedHttpClient& http, std::string api_base)
        : http_(http), api_base_(std::move(api_base)) {}

    // Timestamp of the page's first revision; redirects resolve to the
    // target first. Throws PageMissingError for deleted/unknown pages.
    Date first_revision_date(const std::string& title);

    // Rendered page HTML.
    std::string page_html(const std::string& title);

    const std::string& api_base() const { return api_base_; }

private:
    CachedHttpClient& http_;
    std::string api_base_;
};

}  // namespace freshtab
