#pragma once

#include "freshtab/config.hpp"
#include "freshtab/dates.hpp"
#include "freshtab/domain.hpp"
#include "freshtab/http_cache.hpp"
#include "freshtab/sparql.hpp"

#include <optional>
#include <string>
#include <vector>

namespace freshtab {

struct PageCandidate {
    std::string page_title;
    std::string page_url;
    std::string wikidata_qid;
    Domain domain = Domain::kOther;
    Strategy strategy = Strategy::kEventWindow;
    std::optional<Date> event_date;  // event-window only
    Date page_created;
    std::string query_concept;  // catalog entry id that matched
};

struct ConceptFailure {
    std::string concept_id;
    std::string error;
};

// Partial results are normal: individual concepts may fail while the rest
// of the harvest proceeds. Only an all-concepts failure is fatal.
struct HarvestResult {
    std::vector<PageCandidate> candidates;  // unique QIDs, sorted by QID
    std::vector<ConceptFailure> failures;
    std::size_t dropped_stale = 0;    // new-page candidates created before the cutoff
    std::size_t dropped_missing = 0;  // pages that vanished between query and check
};

// True numeric ordering for "Q123" identifiers.
bool qid_less(const std::string& a, const std::string& b);

HarvestResult collect_candidates(const PipelineConfig& cfg, const ConceptCatalog& catalog,
                                 CachedHttpClient& http);

}  // namespace freshtab
