#pragma once

#include "freshtab/dates.hpp"
#include "freshtab/domain.hpp"
#include "freshtab/http_cache.hpp"

#include <map>
#include <string>
#include <vector>

namespace freshtab {

// One handpicked Wikidata concept worth querying for fresh, table-bearing
// pages. The date property is per entry; no universal rule fits (seasons
// use start time, one-off events point in time, releases publication date).
struct ConceptEntry {
    std::string id;  // short slug, unique within the catalog
    Domain domain = Domain::kOther;
    Strategy strategy = Strategy::kEventWindow;
    std::string class_qid;       // e.g. "Q40231"
    std::string date_property;   // e.g. "P585"; event-window entries only
    std::string note;
};

struct ConceptCatalog {
    std::vector<ConceptEntry> entries;
};

// Strict YAML schema: top-level "concepts" list; every domain must be
// covered by at least one entry.
ConceptCatalog load_catalog(const std::string& path);
ConceptCatalog parse_catalog(const std::string& yaml_text);

// Items of the concept's class whose event date falls inside
// [window_start, window_end], joined to the sitelink of the language's
// Wikipedia. Pure text construction.
std::string build_event_query(const ConceptEntry& entry, const Date& window_start,
                              const Date& window_end, const std::string& language);

// Recency prefilter for newly created items (entity touched inside the
// window). Deliberately a superset: the page's first revision date, checked
// later, is the final authority on newness.
std::string build_newpage_query(const ConceptEntry& entry, const Date& window_start,
                                const Date& window_end, const std::string& language);

using Binding = std::map<std::string, std::string>;

// Variable name -> plain value, one map per result row.
std::vector<Binding> parse_sparql_json(const std::string& body);

HttpRequest sparql_request(const std::string& endpoint, const std::string& query);

// POSTs the query (responses cached by the client; cache hits bypass the
// network entirely). An empty result set is not an error.
std::vector<Binding> run_query(CachedHttpClient& client, const std::string& endpoint,
                               const std::string& query);

}  // namespace freshtab
