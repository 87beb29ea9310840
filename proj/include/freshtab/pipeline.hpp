#pragma once

#include "freshtab/config.hpp"
#include "freshtab/curator.hpp"
#include "freshtab/harvester.hpp"
#include "freshtab/http_cache.hpp"
#include "freshtab/sparql.hpp"

#include <map>
#include <string>
#include <vector>

namespace freshtab {

struct RunLedger {
    std::string run_id;          // dataset name + config hash prefix
    std::string config_sha256;
    std::string dataset;
    std::map<std::string, double> stage_ms;  // harvest, tables, curate, total
    CacheStats cache;
    std::vector<std::string> outputs;  // every emitted artifact, exactly once
};

struct GenerateResult {
    BenchmarkManifest manifest;
    RunLedger ledger;
    std::map<Domain, int> candidate_counts;  // after harvest
    std::map<Domain, int> pool_counts;       // cleaned tables that survived
    HarvestResult harvest;
};

// Steps 1-3 composed: harvest candidates, scrape/clean/pick one table per
// page, balance domains, sample operations, assemble the manifest.
// Deterministic given (config, cache contents). dry_run stops after the
// table stage (counts only, no manifest).
GenerateResult run_generate(const PipelineConfig& cfg, const ConceptCatalog& catalog,
                            CachedHttpClient& http, bool dry_run = false);

std::string ledger_to_json(const RunLedger& ledger);

// Same quotas, window shifted to the calendar month after collection_end.
PipelineConfig next_window_config(const PipelineConfig& cfg);

}  // namespace freshtab
