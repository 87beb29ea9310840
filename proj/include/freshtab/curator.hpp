#pragma once

#include "freshtab/config.hpp"
#include "freshtab/dates.hpp"
#include "freshtab/domain.hpp"
#include "freshtab/table.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace freshtab {

struct Provenance {
    Strategy strategy = Strategy::kEventWindow;
    std::string query_concept;
    Date page_created;

    bool operator==(const Provenance&) const = default;
};

struct BenchmarkEntry {
    std::string id;  // content-addressed from the page URL
    CleanTable table;
    Domain domain = Domain::kOther;
    std::vector<std::string> operations;  // ops_per_table distinct names
    Provenance provenance;

    bool operator==(const BenchmarkEntry&) const = default;
};

struct BenchmarkManifest {
    std::string schema = "freshtab-1";
    std::string name;
    Date created;  // the recorded collection end, not wall clock
    PipelineConfig config;
    std::map<Domain, int> domain_counts;
    std::vector<BenchmarkEntry> entries;
};

// One selected table plus the provenance the entry will carry.
struct PoolTable {
    CleanTable table;
    Domain domain = Domain::kOther;
    Provenance provenance;
};

// Stable id for a page; re-harvesting an unchanged page keeps its id.
std::string entry_id_for(const std::string& page_url);

struct DomainShortfall {
    Domain domain;
    int deficit;
};

struct ShortfallError : std::runtime_error {
    ShortfallError(std::string what, std::vector<DomainShortfall> missing)
        : std::runtime_error(std::move(what)), shortfalls(std::move(missing)) {}
    std::vector<DomainShortfall> shortfalls;
};

// Seeded uniform sample without replacement of quota[d] tables per domain
// (an absent quota takes everything); output sorted by (domain, id).
// Throws ShortfallError naming every underfilled domain and its deficit.
std::vector<PoolTable> balance_domains(const std::vector<PoolTable>& pool,
                                       const DomainQuota& quota, std::uint64_t seed);

// n distinct operation names, uniform without replacement from the nine,
// via the (seed, "ops", entry_id) substream: deterministic per entry and
// independent of processing order.
std::vector<std::string> sample_operations(std::string_view entry_id, int n,
                                           std::uint64_t seed);

BenchmarkManifest assemble(const PipelineConfig& cfg, const std::vector<PoolTable>& selected);

// Canonical bytes: sorted keys, two-space indent, trailing newline.
// Identical inputs give byte-identical output.
std::string manifest_to_json(const BenchmarkManifest& manifest);
BenchmarkManifest manifest_from_json(const std::string& text);

void save_manifest(const BenchmarkManifest& manifest, const std::string& path);
BenchmarkManifest load_manifest(const std::string& path);

// Empty when consistent; otherwise the first violated invariant.
std::string check_manifest(const BenchmarkManifest& manifest);

}  // namespace freshtab
