#include "freshtab/harvester.hpp"

#include "freshtab/errors.hpp"
#include "freshtab/parallel.hpp"
#include "freshtab/wiki.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>

namespace freshtab {
namespace {

std::string qid_from_uri(const std::string& uri) {
    const auto slash = uri.find_last_of('/');
    return slash == std::string::npos ? uri : uri.substr(slash + 1);
}

// Event-window beats new-page on collisions: an in-window event is a
// stronger freshness guarantee than page creation alone. Remaining ties
// break on (concept, title) to keep the result order-independent.
bool better_candidate(const PageCandidate& a, const PageCandidate& b) {
    const int ra = a.strategy == Strategy::kEventWindow ? 0 : 1;
    const int rb = b.strategy == Strategy::kEventWindow ? 0 : 1;
    if (ra != rb) return ra < rb;
    if (a.query_concept != b.query_concept) return a.query_concept < b.query_concept;
    return a.page_title < b.page_title;
}

}  // namespace

bool qid_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) {
        const bool a_q = !a.empty() && a[0] == 'Q';
        const bool b_q = !b.empty() && b[0] == 'Q';
        if (a_q && b_q) return a.size() < b.size();
    }
    return a < b;
}

HarvestResult collect_candidates(const PipelineConfig& cfg, const ConceptCatalog& catalog,
                                 CachedHttpClient& http) {
    HarvestResult result;
    std::mutex mutex;
    std::vector<std::vector<PageCandidate>> per_concept(catalog.entries.size());

    bounded_parallel_for(catalog.entries.size(), 4, [&](std::size_t i) {
        const ConceptEntry& entry = catalog.entries[i];
        try {
            const std::string query =
                entry.strategy == Strategy::kEventWindow
                    ? build_event_query(entry, cfg.cutoff_date, cfg.collection_end,
                                        cfg.language)
                    : build_newpage_query(entry, cfg.cutoff_date, cfg.collection_end,
                                          cfg.language);
            const auto bindings = run_query(http, cfg.endpoints.sparql_url, query);
            std::vector<PageCandidate> found;
            for (const Binding& row : bindings) {
                const auto item = row.find("item");
                const auto article = row.find("article");
                const auto title = row.find("title");
                if (item == row.end() || article == row.end() || title == row.end()) {
                    continue;
                }
                PageCandidate candidate;
                candidate.page_title = title->second;
                candidate.page_url = article->second;
                candidate.wikidata_qid = qid_from_uri(item->second);
                candidate.domain = entry.domain;
                candidate.strategy = entry.strategy;
                candidate.query_concept = entry.id;
                if (entry.strategy == Strategy::kEventWindow) {
                    const auto date = row.find("date");
                    if (date == row.end()) continue;
                    const Date event = parse_date_prefix(date->second);
                    if (event < cfg.cutoff_date || cfg.collection_end < event) continue;
                    candidate.event_date = event;
                }
                found.push_back(std::move(candidate));
            }
            per_concept[i] = std::move(found);
        } catch (const std::exception& e) {
            std::lock_guard lock(mutex);
            result.failures.push_back({entry.id, e.what()});
        }
    });

    if (result.failures.size() == catalog.entries.size() && !catalog.entries.empty()) {
        std::string detail;
        for (const auto& f : result.failures) detail += "\n  " + f.concept_id + ": " + f.error;
        throw NetworkError("every catalog query failed:" + detail);
    }

    std::map<std::string, PageCandidate> by_qid;
    for (auto& found : per_concept) {
        for (auto& candidate : found) {
            auto [it, inserted] = by_qid.try_emplace(candidate.wikidata_qid, candidate);
            if (!inserted && better_candidate(candidate, it->second)) {
                it->second = std::move(candidate);
            }
        }
    }

    std::vector<PageCandidate> unique;
    unique.reserve(by_qid.size());
    for (auto& [qid, candidate] : by_qid) unique.push_back(std::move(candidate));

    // Creation dates come from page history; the final authority on the
    // new-page freshness predicate.
    WikiClient wiki(http, cfg.endpoints.wiki_api_base);
    std::vector<int> keep(unique.size(), 0);
    std::atomic<std::size_t> stale{0};
    std::atomic<std::size_t> missing{0};
    bounded_parallel_for(unique.size(), 4, [&](std::size_t i) {
        try {
            unique[i].page_created = wiki.first_revision_date(unique[i].page_title);
        } catch (const PageMissingError&) {
            ++missing;
            return;
        } catch (const std::exception&) {
            ++missing;
            return;
        }
        if (unique[i].strategy == Strategy::kNewPage &&
            !(cfg.cutoff_date < unique[i].page_created)) {
            ++stale;
            return;
        }
        keep[i] = 1;
    });
    result.dropped_stale = stale.load();
    result.dropped_missing = missing.load();

    for (std::size_t i = 0; i < unique.size(); ++i) {
        if (keep[i]) result.candidates.push_back(std::move(unique[i]));
    }
    std::sort(result.candidates.begin(), result.candidates.end(),
              [](const PageCandidate& a, const PageCandidate& b) {
                  return qid_less(a.wikidata_qid, b.wikidata_qid);
              });
    return result;
}

}  // namespace freshtab
