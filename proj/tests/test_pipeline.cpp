#include "freshtab/pipeline.hpp"

#include "freshtab/cleaner.hpp"
#include "freshtab/errors.hpp"

#include "support/fake_transport.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <map>

using namespace freshtab;
using namespace freshtab::testsupport;

namespace {

std::filesystem::path shared_fixture_cache() {
    static const std::filesystem::path dir = [] {
        const auto path = std::filesystem::temp_directory_path() / "freshtab-fixture-cache";
        std::filesystem::remove_all(path);
        materialize_fixture_cache(path);
        return path;
    }();
    return dir;
}

CachedHttpClient offline_client(const std::filesystem::path& cache_dir) {
    return CachedHttpClient(std::make_unique<NoNetworkTransport>(),
                            {.cache_dir = cache_dir, .offline = true});
}

}  // namespace

TEST_CASE("the fixture snapshot reproduces the reference harvest counts") {
    const auto cache = shared_fixture_cache();
    const PipelineConfig cfg = fixture_config("lot", cache);
    CachedHttpClient client = offline_client(cache);
    const HarvestResult result = collect_candidates(cfg, fixture_catalog(), client);

    // 531 pages with fresh tables, as recorded for the 2-5/25 en window
    CHECK(result.candidates.size() == 531);
    std::map<Domain, int> counts;
    for (const auto& candidate : result.candidates) counts[candidate.domain] += 1;
    CHECK(counts[Domain::kSport] == 204);
    CHECK(counts[Domain::kPolitics] == 142);
    CHECK(counts[Domain::kCulture] == 109);
    CHECK(counts[Domain::kOther] == 76);
    CHECK(result.dropped_stale == 4);
    CHECK(result.failures.empty());

    // every candidate satisfies its strategy's freshness predicate
    for (const auto& candidate : result.candidates) {
        if (candidate.strategy == Strategy::kEventWindow) {
            REQUIRE(candidate.event_date.has_value());
            CHECK(cfg.cutoff_date <= *candidate.event_date);
            CHECK(*candidate.event_date <= cfg.collection_end);
        } else {
            CHECK(cfg.cutoff_date < candidate.page_created);
        }
    }
    // QIDs are unique and sorted
    for (std::size_t i = 1; i < result.candidates.size(); ++i) {
        CHECK(qid_less(result.candidates[i - 1].wikidata_qid,
                       result.candidates[i].wikidata_qid));
    }
}

TEST_CASE("generate on the lot config hits the exact legacy mix") {
    const auto cache = shared_fixture_cache();
    const PipelineConfig cfg = fixture_config("lot", cache);
    CachedHttpClient client = offline_client(cache);
    const GenerateResult result = run_generate(cfg, fixture_catalog(), client);

    CHECK(result.manifest.entries.size() == 100);
    CHECK(result.manifest.domain_counts.at(Domain::kSport) == 73);
    CHECK(result.manifest.domain_counts.at(Domain::kOther) == 13);
    CHECK(result.manifest.domain_counts.at(Domain::kCulture) == 11);
    CHECK(result.manifest.domain_counts.at(Domain::kPolitics) == 3);
    CHECK(result.manifest.name == "FreshTab.2-5/25.en.lot");
    CHECK(check_manifest(result.manifest).empty());
    CHECK(client.stats().network_requests == 0);

    // every selected table obeys the cleaning limits
    for (const auto& entry : result.manifest.entries) {
        CHECK(check_clean_invariants(entry.table, cfg.table_limits).empty());
    }
}

TEST_CASE("generate on the diverse config fills fifty per domain") {
    const auto cache = shared_fixture_cache();
    const PipelineConfig cfg = fixture_config("diverse", cache);
    CachedHttpClient client = offline_client(cache);
    const GenerateResult result = run_generate(cfg, fixture_catalog(), client);
    CHECK(result.manifest.entries.size() == 200);
    for (Domain d : kAllDomains) CHECK(result.manifest.domain_counts.at(d) == 50);
}

TEST_CASE("two runs over the same cache are byte-identical") {
    const auto cache = shared_fixture_cache();
    const PipelineConfig cfg = fixture_config("lot", cache);
    CachedHttpClient first = offline_client(cache);
    CachedHttpClient second = offline_client(cache);
    const std::string once =
        manifest_to_json(run_generate(cfg, fixture_catalog(), first).manifest);
    const std::string twice =
        manifest_to_json(run_generate(cfg, fixture_catalog(), second).manifest);
    CHECK(once == twice);
}

TEST_CASE("dry runs report counts and build no manifest") {
    const auto cache = shared_fixture_cache();
    const PipelineConfig cfg = fixture_config("lot", cache);
    CachedHttpClient client = offline_client(cache);
    const GenerateResult result = run_generate(cfg, fixture_catalog(), client, true);
    CHECK(result.manifest.entries.empty());
    CHECK(result.candidate_counts.at(Domain::kSport) == 204);
    CHECK(result.pool_counts.at(Domain::kSport) == 196);
    CHECK(result.pool_counts.at(Domain::kPolitics) == 138);
    CHECK(result.pool_counts.at(Domain::kCulture) == 105);
    CHECK(result.pool_counts.at(Domain::kOther) == 70);
}

TEST_CASE("the ledger records cache traffic and stage timings") {
    const auto cache = shared_fixture_cache();
    const PipelineConfig cfg = fixture_config("lot", cache);
    CachedHttpClient client = offline_client(cache);
    const GenerateResult result = run_generate(cfg, fixture_catalog(), client);
    CHECK(result.ledger.cache.hits > 0);
    CHECK(result.ledger.cache.network_requests == 0);
    CHECK(result.ledger.stage_ms.contains("harvest"));
    CHECK(result.ledger.stage_ms.contains("tables"));
    CHECK(result.ledger.stage_ms.contains("curate"));
    CHECK(result.ledger.dataset == "FreshTab.2-5/25.en.lot");
    CHECK_FALSE(result.ledger.config_sha256.empty());
    const std::string json = ledger_to_json(result.ledger);
    CHECK(json.find("network_requests") != std::string::npos);
}

TEST_CASE("a too-demanding quota fails with a shortfall") {
    const auto cache = shared_fixture_cache();
    PipelineConfig cfg = fixture_config("lot", cache);
    cfg.domain_quota[Domain::kPolitics] = 9999;
    cfg.target_count = 9999 + 73 + 13 + 11;
    CachedHttpClient client = offline_client(cache);
    CHECK_THROWS_AS(run_generate(cfg, fixture_catalog(), client), ShortfallError);
}

TEST_CASE("the fixture snapshot itself is frozen") {
    const auto cache = shared_fixture_cache();
    // regenerating the snapshot must not drift between runs of this binary
    const auto second = std::filesystem::temp_directory_path() / "freshtab-fixture-cache-2";
    std::filesystem::remove_all(second);
    materialize_fixture_cache(second);
    CHECK(tree_sha256(cache) == tree_sha256(second));
    std::filesystem::remove_all(second);
}

TEST_CASE("schedule-next shifts the window to the following month") {
    PipelineConfig cfg = fixture_config("lot", "cache");
    const PipelineConfig next = next_window_config(cfg);
    CHECK(next.cutoff_date == Date{2025, 6, 1});
    CHECK(next.collection_end == Date{2025, 6, 30});
    CHECK(dataset_name(next) == "FreshTab.6/25.en.lot");
    CHECK(next.domain_quota == cfg.domain_quota);

    cfg.cutoff_date = {2025, 12, 1};
    cfg.collection_end = {2025, 12, 31};
    const PipelineConfig january = next_window_config(cfg);
    CHECK(january.cutoff_date == Date{2026, 1, 1});
    CHECK(january.collection_end == Date{2026, 1, 31});
    CHECK(dataset_name(january) == "FreshTab.1/26.en.lot");
}

TEST_CASE("month arithmetic matches the std::chrono calendar") {
    using namespace std::chrono;
    for (int year = 2024; year <= 2032; ++year) {
        for (int month = 1; month <= 12; ++month) {
            PipelineConfig cfg = fixture_config("lot", "cache");
            cfg.cutoff_date = {year, month, 1};
            cfg.collection_end = {year, month, days_in_month(year, month)};
            const PipelineConfig next = next_window_config(cfg);

            const year_month_day first{std::chrono::year(year) / month / 1};
            const year_month_day expected_first{(first.year() / first.month() + months{1}) / 1};
            const year_month_day_last expected_last{
                expected_first.year() / expected_first.month() / last};
            CHECK(next.cutoff_date.year == static_cast<int>(expected_first.year()));
            CHECK(next.cutoff_date.month ==
                  static_cast<int>(static_cast<unsigned>(expected_first.month())));
            CHECK(next.collection_end.day ==
                  static_cast<int>(static_cast<unsigned>(expected_last.day())));
            validate_config(next);
        }
    }
    // leap February specifically
    PipelineConfig cfg = fixture_config("lot", "cache");
    cfg.cutoff_date = {2028, 1, 1};
    cfg.collection_end = {2028, 1, 31};
    CHECK(next_window_config(cfg).collection_end == Date{2028, 2, 29});
    cfg.cutoff_date = {2027, 1, 1};
    cfg.collection_end = {2027, 1, 31};
    CHECK(next_window_config(cfg).collection_end == Date{2027, 2, 28});
}
