#pragma once

// Synthesizes the bundled fixture snapshot: recorded-style Wikidata SPARQL
// and MediaWiki responses for the 2025-02..2025-05 English window, written
// into an on-disk cache so `generate` runs fully offline. Deterministic by
// construction; tree_sha256 pins the frozen bytes.

#include "freshtab/config.hpp"
#include "freshtab/domain.hpp"
#include "freshtab/sparql.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace freshtab::testsupport {

std::filesystem::path source_dir();

struct FixtureStats {
    std::map<Domain, int> candidate_counts;  // expected harvest output
    std::map<Domain, int> pool_counts;       // expected usable tables
    int total_candidates = 0;
};

FixtureStats materialize_fixture_cache(const std::filesystem::path& cache_dir);

// configs/en-lot.yaml or configs/en-diverse.yaml with the cache redirected.
PipelineConfig fixture_config(const std::string& variant,
                              const std::filesystem::path& cache_dir);

ConceptCatalog fixture_catalog();

// Fingerprint over (relative path, bytes) of every file, in sorted order.
std::string tree_sha256(const std::filesystem::path& dir);

}  // namespace freshtab::testsupport
