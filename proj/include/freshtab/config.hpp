#pragma once

#include "freshtab/dates.hpp"
#include "freshtab/domain.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace freshtab {

struct TableLimits {
    int min_rows = 4;
    int max_rows = 40;
    int min_cols = 3;
    int max_cols = 10;
    double min_nonempty_ratio = 0.5;
    int max_serialized_chars = 3000;
    int max_cell_chars = 200;

    bool operator==(const TableLimits&) const = default;
};

struct Endpoints {
    std::string sparql_url;
    std::string wiki_api_base;

    bool operator==(const Endpoints&) const = default;
};

// One quota per domain; nullopt means "take everything available" and is
// only allowed for variant-free runs.
using DomainQuota = std::map<Domain, std::optional<int>>;

struct PipelineConfig {
    std::string language = "en";
    Date cutoff_date;
    Date collection_end;  // defaults to the run's start date (UTC)
    int target_count = 0;
    DomainQuota domain_quota;
    TableLimits table_limits;
    int ops_per_table = 5;
    std::uint64_t rng_seed = 0;
    Endpoints endpoints;
    std::string cache_dir = "cache";
    std::string variant_name;

    bool operator==(const PipelineConfig&) const = default;
};

// Parses and validates; all defaults filled. Throws ConfigError on YAML
// problems (including unknown keys) and ValidationError naming the first
// violated invariant.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(const std::string& yaml_text);

void validate_config(const PipelineConfig& cfg);

// Normalized emission; parse_config(config_to_yaml(cfg)) == cfg.
std::string config_to_yaml(const PipelineConfig& cfg);

// "FreshTab.<m1-m2>/<yy>.<lang>[.<variant>]"; a window inside one calendar
// month collapses to a single month number.
std::string dataset_name(const PipelineConfig& cfg);

}  // namespace freshtab
