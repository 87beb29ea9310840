#include "freshtab/pipeline.hpp"

#include "freshtab/cleaner.hpp"
#include "freshtab/hash.hpp"
#include "freshtab/html_tables.hpp"
#include "freshtab/parallel.hpp"
#include "freshtab/wiki.hpp"

#include <json.hpp>

#include <chrono>
#include <optional>

namespace freshtab {
namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

GenerateResult run_generate(const PipelineConfig& cfg, const ConceptCatalog& catalog,
                            CachedHttpClient& http, bool dry_run) {
    GenerateResult result;
    const auto t_total = std::chrono::steady_clock::now();

    auto t_stage = std::chrono::steady_clock::now();
    result.harvest = collect_candidates(cfg, catalog, http);
    result.ledger.stage_ms["harvest"] = ms_since(t_stage);

    for (Domain d : kAllDomains) {
        result.candidate_counts[d] = 0;
        result.pool_counts[d] = 0;
    }
    for (const auto& candidate : result.harvest.candidates) {
        result.candidate_counts[candidate.domain] += 1;
    }

    // one table per page, pages processed independently
    t_stage = std::chrono::steady_clock::now();
    WikiClient wiki(http, cfg.endpoints.wiki_api_base);
    const auto& candidates = result.harvest.candidates;
    std::vector<std::optional<PoolTable>> picked(candidates.size());
    bounded_parallel_for(candidates.size(), 4, [&](std::size_t i) {
        const PageCandidate& candidate = candidates[i];
        std::string html;
        try {
            html = wiki.page_html(candidate.page_title);
        } catch (const std::exception&) {
            return;  // page vanished between harvest and scrape
        }
        std::vector<RawTable> raw_tables = extract_tables(html);
        std::vector<CleanOutcome> outcomes;
        outcomes.reserve(raw_tables.size());
        for (auto& raw : raw_tables) {
            raw.page = PageRef{candidate.page_title, candidate.page_url, candidate.domain};
            outcomes.push_back(clean_table(raw, cfg.table_limits));
        }
        if (auto best = pick_table(outcomes)) {
            PoolTable item;
            item.table = std::move(*best);
            item.domain = candidate.domain;
            item.provenance = Provenance{candidate.strategy, candidate.query_concept,
                                         candidate.page_created};
            picked[i] = std::move(item);
        }
    });
    std::vector<PoolTable> pool;
    pool.reserve(candidates.size());
    for (auto& item : picked) {
        if (item) {
            result.pool_counts[item->domain] += 1;
            pool.push_back(std::move(*item));
        }
    }
    result.ledger.stage_ms["tables"] = ms_since(t_stage);

    if (!dry_run) {
        t_stage = std::chrono::steady_clock::now();
        const auto selected = balance_domains(pool, cfg.domain_quota, cfg.rng_seed);
        result.manifest = assemble(cfg, selected);
        result.ledger.stage_ms["curate"] = ms_since(t_stage);
    }

    result.ledger.config_sha256 = sha256_hex(config_to_yaml(cfg));
    result.ledger.dataset = result.manifest.name;
    result.ledger.run_id =
        result.manifest.name + "@" + result.ledger.config_sha256.substr(0, 12);
    result.ledger.cache = http.stats();
    result.ledger.stage_ms["total"] = ms_since(t_total);
    return result;
}

std::string ledger_to_json(const RunLedger& ledger) {
    nlohmann::json stages = nlohmann::json::object();
    for (const auto& [stage, ms] : ledger.stage_ms) stages[stage] = ms;
    const nlohmann::json doc = {
        {"cache",
         {{"hits", ledger.cache.hits},
          {"misses", ledger.cache.misses},
          {"network_requests", ledger.cache.network_requests}}},
        {"config_sha256", ledger.config_sha256},
        {"dataset", ledger.dataset},
        {"outputs", ledger.outputs},
        {"run_id", ledger.run_id},
        {"stage_ms", stages},
    };
    return doc.dump(2) + "\n";
}

PipelineConfig next_window_config(const PipelineConfig& cfg) {
    PipelineConfig next = cfg;
    next.cutoff_date = first_of_next_month(cfg.collection_end);
    next.collection_end = last_of_month(next.cutoff_date.year, next.cutoff_date.month);
    return next;
}

}  // namespace freshtab
