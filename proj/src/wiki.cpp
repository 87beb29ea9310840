#include "freshtab/wiki.hpp"

#include "freshtab/errors.hpp"

#include <json.hpp>

namespace freshtab {

HttpRequest wiki_revision_request(const std::string& api_base, const std::string& title) {
    HttpRequest request;
    request.url = api_base +
                  "/api.php?action=query&format=json&prop=revisions&rvprop=timestamp"
                  "&rvlimit=1&rvdir=newer&redirects=1&titles=" +
                  url_encode_component(title);
    request.accept = "application/json";
    return request;
}

HttpRequest wiki_html_request(const std::string& api_base, const std::string& title) {
    HttpRequest request;
    request.url = api_base + "/rest.php/v1/page/" + url_encode_component(title) + "/html";
    request.accept = "text/html";
    return request;
}

Date WikiClient::first_revision_date(const std::string& title) {
    std::string body;
    try {
        body = http_.fetch(wiki_revision_request(api_base_, title));
    } catch (const HttpError& e) {
        if (e.status == 404) throw PageMissingError("page not found: " + title);
        throw;
    }
    nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("query") || !doc["query"].contains("pages")) {
        throw MalformedResponseError("unexpected revisions response for " + title);
    }
    for (const auto& [page_id, page] : doc["query"]["pages"].items()) {
        if (page.contains("missing") || page_id == "-1") {
            throw PageMissingError("page missing: " + title);
        }
        if (page.contains("revisions") && page["revisions"].is_array() &&
            !page["revisions"].empty() && page["revisions"][0].contains("timestamp")) {
            return parse_date_prefix(page["revisions"][0]["timestamp"].get<std::string>());
        }
    }
    throw MalformedResponseError("no revision timestamp for " + title);
}

std::string WikiClient::page_html(const std::string& title) {
    try {
        return http_.fetch(wiki_html_request(api_base_, title));
    } catch (const HttpError& e) {
        if (e.status == 404) throw PageMissingError("page not found: " + title);
        throw;
    }
}

}  // namespace freshtab
