#include "freshtab/curator.hpp"

#include "freshtab/errors.hpp"
#include "freshtab/hash.hpp"
#include "freshtab/http_cache.hpp"
#include "freshtab/ops.hpp"
#include "freshtab/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace freshtab {
namespace {

using nlohmann::json;

json json_from_config(const PipelineConfig& cfg) {
    json quota = json::object();
    for (const auto& [domain, value] : cfg.domain_quota) {
        if (value.has_value()) {
            quota[std::string(domain_name(domain))] = *value;
        } else {
            quota[std::string(domain_name(domain))] = nullptr;
        }
    }
    return json{
        {"cache_dir", cfg.cache_dir},
        {"collection_end", format_date(cfg.collection_end)},
        {"cutoff_date", format_date(cfg.cutoff_date)},
        {"domain_quota", quota},
        {"endpoints",
         {{"sparql_url", cfg.endpoints.sparql_url},
          {"wiki_api_base", cfg.endpoints.wiki_api_base}}},
        {"language", cfg.language},
        {"ops_per_table", cfg.ops_per_table},
        {"rng_seed", cfg.rng_seed},
        {"table_limits",
         {{"max_cell_chars", cfg.table_limits.max_cell_chars},
          {"max_cols", cfg.table_limits.max_cols},
          {"max_rows", cfg.table_limits.max_rows},
          {"max_serialized_chars", cfg.table_limits.max_serialized_chars},
          {"min_cols", cfg.table_limits.min_cols},
          {"min_nonempty_ratio", cfg.table_limits.min_nonempty_ratio},
          {"min_rows", cfg.table_limits.min_rows}}},
        {"target_count", cfg.target_count},
        {"variant_name", cfg.variant_name},
    };
}

PipelineConfig config_from_json(const json& j) {
    PipelineConfig cfg;
    cfg.cache_dir = j.at("cache_dir").get<std::string>();
    cfg.collection_end = parse_date(j.at("collection_end").get<std::string>());
    cfg.cutoff_date = parse_date(j.at("cutoff_date").get<std::string>());
    for (const auto& [key, value] : j.at("domain_quota").items()) {
        const auto domain = parse_domain(key);
        if (!domain) throw ValidationError("manifest config: unknown domain " + key);
        cfg.domain_quota[*domain] =
            value.is_null() ? std::optional<int>{} : std::optional<int>{value.get<int>()};
    }
    cfg.endpoints.sparql_url = j.at("endpoints").at("sparql_url").get<std::string>();
    cfg.endpoints.wiki_api_base = j.at("endpoints").at("wiki_api_base").get<std::string>();
    cfg.language = j.at("language").get<std::string>();
    cfg.ops_per_table = j.at("ops_per_table").get<int>();
    cfg.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    const json& limits = j.at("table_limits");
    cfg.table_limits.max_cell_chars = limits.at("max_cell_chars").get<int>();
    cfg.table_limits.max_cols = limits.at("max_cols").get<int>();
    cfg.table_limits.max_rows = limits.at("max_rows").get<int>();
    cfg.table_limits.max_serialized_chars = limits.at("max_serialized_chars").get<int>();
    cfg.table_limits.min_cols = limits.at("min_cols").get<int>();
    cfg.table_limits.min_nonempty_ratio = limits.at("min_nonempty_ratio").get<double>();
    cfg.table_limits.min_rows = limits.at("min_rows").get<int>();
    cfg.target_count = j.at("target_count").get<int>();
    cfg.variant_name = j.at("variant_name").get<std::string>();
    return cfg;
}

json json_from_entry(const BenchmarkEntry& entry) {
    json table = {
        {"header", entry.table.header},
        {"page_title", entry.table.page_title},
        {"page_url", entry.table.page_url},
        {"rows", entry.table.rows},
    };
    if (entry.table.caption) table["caption"] = *entry.table.caption;
    return json{
        {"domain", std::string(domain_name(entry.domain))},
        {"id", entry.id},
        {"operations", entry.operations},
        {"provenance",
         {{"page_created", format_date(entry.provenance.page_created)},
          {"query_concept", entry.provenance.query_concept},
          {"strategy", std::string(strategy_name(entry.provenance.strategy))}}},
        {"table", table},
    };
}

BenchmarkEntry entry_from_json(const json& j) {
    BenchmarkEntry entry;
    entry.id = j.at("id").get<std::string>();
    const auto domain = parse_domain(j.at("domain").get<std::string>());
    if (!domain) throw ValidationError("manifest entry: unknown domain");
    entry.domain = *domain;
    entry.operations = j.at("operations").get<std::vector<std::string>>();
    const json& prov = j.at("provenance");
    entry.provenance.page_created = parse_date(prov.at("page_created").get<std::string>());
    entry.provenance.query_concept = prov.at("query_concept").get<std::string>();
    const auto strategy = parse_strategy(prov.at("strategy").get<std::string>());
    if (!strategy) throw ValidationError("manifest entry: unknown strategy");
    entry.provenance.strategy = *strategy;
    const json& table = j.at("table");
    entry.table.page_title = table.at("page_title").get<std::string>();
    entry.table.page_url = table.at("page_url").get<std::string>();
    entry.table.domain = entry.domain;
    entry.table.header = table.at("header").get<std::vector<std::string>>();
    entry.table.rows = table.at("rows").get<std::vector<std::vector<std::string>>>();
    if (table.contains("caption")) entry.table.caption = table.at("caption").get<std::string>();
    return entry;
}

bool entry_order(const BenchmarkEntry& a, const BenchmarkEntry& b) {
    if (a.domain != b.domain) return a.domain < b.domain;
    return a.id < b.id;
}

}  // namespace

std::string entry_id_for(const std::string& page_url) {
    return sha256_hex(page_url).substr(0, 16);
}

std::vector<PoolTable> balance_domains(const std::vector<PoolTable>& pool,
                                       const DomainQuota& quota, std::uint64_t seed) {
    std::map<Domain, std::vector<const PoolTable*>> buckets;
    for (const auto& item : pool) buckets[item.domain].push_back(&item);
    for (auto& [domain, bucket] : buckets) {
        std::sort(bucket.begin(), bucket.end(), [](const PoolTable* a, const PoolTable* b) {
            return entry_id_for(a->table.page_url) < entry_id_for(b->table.page_url);
        });
    }

    std::vector<DomainShortfall> shortfalls;
    for (const auto& [domain, want] : quota) {
        if (!want.has_value()) continue;
        const auto it = buckets.find(domain);
        const int have = it == buckets.end() ? 0 : static_cast<int>(it->second.size());
        if (have < *want) shortfalls.push_back({domain, *want - have});
    }
    if (!shortfalls.empty()) {
        std::string message = "domain pool shortfall:";
        for (const auto& s : shortfalls) {
            message += " " + std::string(domain_name(s.domain)) + " short by " +
                       std::to_string(s.deficit) + ";";
        }
        throw ShortfallError(message, std::move(shortfalls));
    }

    std::vector<PoolTable> selected;
    for (const auto& [domain, want] : quota) {
        const auto it = buckets.find(domain);
        if (it == buckets.end()) continue;
        const auto& bucket = it->second;
        if (!want.has_value()) {
            for (const PoolTable* item : bucket) selected.push_back(*item);
            continue;
        }
        SplitMix64 rng = substream(seed, "balance", domain_name(domain));
        for (std::size_t index :
             sample_indices(rng, bucket.size(), static_cast<std::size_t>(*want))) {
            selected.push_back(*bucket[index]);
        }
    }
    std::sort(selected.begin(), selected.end(), [](const PoolTable& a, const PoolTable& b) {
        if (a.domain != b.domain) return a.domain < b.domain;
        return entry_id_for(a.table.page_url) < entry_id_for(b.table.page_url);
    });
    return selected;
}

std::vector<std::string> sample_operations(std::string_view entry_id, int n,
                                           std::uint64_t seed) {
    if (n < 1 || n > kOperationCount) {
        throw UndefinedInputError("operation sample size must be in [1, 9], got " +
                                  std::to_string(n));
    }
    SplitMix64 rng = substream(seed, "ops", entry_id);
    const auto& ops = logical_operations();
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n));
    for (std::size_t index :
         sample_indices(rng, ops.size(), static_cast<std::size_t>(n))) {
        names.push_back(ops[index].name);
    }
    return names;
}

BenchmarkManifest assemble(const PipelineConfig& cfg, const std::vector<PoolTable>& selected) {
    BenchmarkManifest manifest;
    manifest.name = dataset_name(cfg);
    manifest.created = cfg.collection_end;
    manifest.config = cfg;
    for (Domain d : kAllDomains) manifest.domain_counts[d] = 0;
    for (const auto& item : selected) {
        BenchmarkEntry entry;
        entry.id = entry_id_for(item.table.page_url);
        entry.table = item.table;
        entry.domain = item.domain;
        entry.table.domain = item.domain;
        entry.operations = sample_operations(entry.id, cfg.ops_per_table, cfg.rng_seed);
        entry.provenance = item.provenance;
        manifest.domain_counts[entry.domain] += 1;
        manifest.entries.push_back(std::move(entry));
    }
    std::sort(manifest.entries.begin(), manifest.entries.end(), entry_order);
    const std::string violated = check_manifest(manifest);
    if (!violated.empty()) {
        throw ValidationError("assembled manifest is inconsistent: " + violated);
    }
    return manifest;
}

std::string check_manifest(const BenchmarkManifest& manifest) {
    if (manifest.schema != "freshtab-1") return "schema-version";
    std::map<Domain, int> counts;
    for (Domain d : kAllDomains) counts[d] = 0;
    std::set<std::string> ids;
    for (const auto& entry : manifest.entries) {
        counts[entry.domain] += 1;
        if (!ids.insert(entry.id).second) return "unique-entry-ids";
        if (entry.id != entry_id_for(entry.table.page_url)) return "content-addressed-ids";
        if (static_cast<int>(entry.operations.size()) != manifest.config.ops_per_table) {
            return "operations-count";
        }
        std::set<std::string> distinct(entry.operations.begin(), entry.operations.end());
        if (distinct.size() != entry.operations.size()) return "operations-distinct";
        for (const auto& name : entry.operations) {
            if (!is_operation_name(name)) return "operations-known";
        }
    }
    if (counts != manifest.domain_counts) return "domain-counts-accurate";
    for (const auto& [domain, want] : manifest.config.domain_quota) {
        if (want.has_value() && counts[domain] != *want) return "domain-counts-match-quota";
    }
    if (!std::is_sorted(manifest.entries.begin(), manifest.entries.end(), entry_order)) {
        return "entries-sorted";
    }
    return "";
}

std::string manifest_to_json(const BenchmarkManifest& manifest) {
    json counts = json::object();
    for (const auto& [domain, count] : manifest.domain_counts) {
        counts[std::string(domain_name(domain))] = count;
    }
    json entries = json::array();
    for (const auto& entry : manifest.entries) entries.push_back(json_from_entry(entry));
    const json doc = {
        {"config", json_from_config(manifest.config)},
        {"created", format_date(manifest.created)},
        {"domain_counts", counts},
        {"entries", entries},
        {"name", manifest.name},
        {"schema", manifest.schema},
    };
    return doc.dump(2) + "\n";
}

BenchmarkManifest manifest_from_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw ValidationError("manifest is not valid JSON");
    BenchmarkManifest manifest;
    manifest.schema = doc.at("schema").get<std::string>();
    manifest.name = doc.at("name").get<std::string>();
    manifest.created = parse_date(doc.at("created").get<std::string>());
    manifest.config = config_from_json(doc.at("config"));
    for (Domain d : kAllDomains) manifest.domain_counts[d] = 0;
    for (const auto& [key, value] : doc.at("domain_counts").items()) {
        const auto domain = parse_domain(key);
        if (!domain) throw ValidationError("manifest: unknown domain in counts");
        manifest.domain_counts[*domain] = value.get<int>();
    }
    for (const auto& item : doc.at("entries")) {
        manifest.entries.push_back(entry_from_json(item));
    }
    const std::string violated = check_manifest(manifest);
    if (!violated.empty()) {
        throw ValidationError("manifest failed validation: " + violated);
    }
    return manifest;
}

void save_manifest(const BenchmarkManifest& manifest, const std::string& path) {
    write_file_atomic(path, manifest_to_json(manifest));
}

BenchmarkManifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read manifest: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return manifest_from_json(text.str());
}

}  // namespace freshtab
