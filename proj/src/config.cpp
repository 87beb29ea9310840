#include "freshtab/config.hpp"

#include "freshtab/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace freshtab {
namespace {

constexpr const char* kTopLevelKeys[] = {
    "language",    "cutoff_date", "collection_end", "target_count",
    "domain_quota", "table_limits", "ops_per_table", "rng_seed",
    "endpoints",   "cache_dir",   "variant_name"};

constexpr const char* kLimitKeys[] = {
    "min_rows", "max_rows", "min_cols", "max_cols",
    "min_nonempty_ratio", "max_serialized_chars", "max_cell_chars"};

constexpr const char* kEndpointKeys[] = {"sparql_url", "wiki_api_base"};

template <std::size_t N>
void reject_unknown_keys(const YAML::Node& node, const char* const (&allowed)[N],
                         const std::string& where) {
    for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown key '" + key + "' in " + where +
                              " (strict schema; check for typos)");
        }
    }
}

int require_int(const YAML::Node& node, const std::string& key) {
    try {
        return node.as<int>();
    } catch (const YAML::Exception&) {
        throw ConfigError("'" + key + "' must be an integer");
    }
}

std::string default_wiki_api_base(const std::string& language) {
    return "https://" + language + ".wikipedia.org/w";
}

bool plausible_language(const std::string& lang) {
    if (lang.empty()) return false;
    for (char c : lang) {
        if (!(std::islower(static_cast<unsigned char>(c)) || c == '-')) return false;
    }
    return true;
}

}  // namespace

PipelineConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("YAML parse error: ") + e.what());
    }
    if (!root.IsMap()) throw ConfigError("config must be a YAML mapping");
    reject_unknown_keys(root, kTopLevelKeys, "config");

    PipelineConfig cfg;

    if (!root["language"]) throw ConfigError("missing required key 'language'");
    cfg.language = root["language"].as<std::string>();

    if (!root["cutoff_date"]) throw ConfigError("missing required key 'cutoff_date'");
    cfg.cutoff_date = parse_date(root["cutoff_date"].as<std::string>());

    cfg.collection_end = root["collection_end"]
                             ? parse_date(root["collection_end"].as<std::string>())
                             : today_utc();

    if (!root["target_count"]) throw ConfigError("missing required key 'target_count'");
    cfg.target_count = require_int(root["target_count"], "target_count");

    if (!root["domain_quota"] || !root["domain_quota"].IsMap()) {
        throw ConfigError("missing required mapping 'domain_quota'");
    }
    std::set<Domain> seen;
    for (const auto& kv : root["domain_quota"]) {
        const std::string key = kv.first.as<std::string>();
        const auto domain = parse_domain(key);
        if (!domain) {
            throw ConfigError("unknown domain '" + key +
                              "' in domain_quota (expected sport, politics, culture, other)");
        }
        if (kv.second.IsScalar() && kv.second.Scalar() == "unbounded") {
            cfg.domain_quota[*domain] = std::nullopt;
        } else {
            cfg.domain_quota[*domain] = require_int(kv.second, "domain_quota." + key);
        }
        seen.insert(*domain);
    }
    for (Domain d : kAllDomains) {
        if (!seen.contains(d)) {
            throw ConfigError("domain_quota is missing domain '" +
                              std::string(domain_name(d)) + "'");
        }
    }

    if (root["table_limits"]) {
        const YAML::Node limits = root["table_limits"];
        if (!limits.IsMap()) throw ConfigError("'table_limits' must be a mapping");
        reject_unknown_keys(limits, kLimitKeys, "table_limits");
        TableLimits& t = cfg.table_limits;
        if (limits["min_rows"]) t.min_rows = require_int(limits["min_rows"], "min_rows");
        if (limits["max_rows"]) t.max_rows = require_int(limits["max_rows"], "max_rows");
        if (limits["min_cols"]) t.min_cols = require_int(limits["min_cols"], "min_cols");
        if (limits["max_cols"]) t.max_cols = require_int(limits["max_cols"], "max_cols");
        if (limits["min_nonempty_ratio"]) {
            t.min_nonempty_ratio = limits["min_nonempty_ratio"].as<double>();
        }
        if (limits["max_serialized_chars"]) {
            t.max_serialized_chars =
                require_int(limits["max_serialized_chars"], "max_serialized_chars");
        }
        if (limits["max_cell_chars"]) {
            t.max_cell_chars = require_int(limits["max_cell_chars"], "max_cell_chars");
        }
    }

    if (root["ops_per_table"]) {
        cfg.ops_per_table = require_int(root["ops_per_table"], "ops_per_table");
    }
    if (root["rng_seed"]) cfg.rng_seed = root["rng_seed"].as<std::uint64_t>();

    if (root["endpoints"]) {
        const YAML::Node ep = root["endpoints"];
        if (!ep.IsMap()) throw ConfigError("'endpoints' must be a mapping");
        reject_unknown_keys(ep, kEndpointKeys, "endpoints");
        if (ep["sparql_url"]) cfg.endpoints.sparql_url = ep["sparql_url"].as<std::string>();
        if (ep["wiki_api_base"]) {
            cfg.endpoints.wiki_api_base = ep["wiki_api_base"].as<std::string>();
        }
    }
    if (cfg.endpoints.sparql_url.empty()) {
        cfg.endpoints.sparql_url = "https://query.wikidata.org/sparql";
    }
    if (cfg.endpoints.wiki_api_base.empty()) {
        cfg.endpoints.wiki_api_base = default_wiki_api_base(cfg.language);
    }

    if (root["cache_dir"]) cfg.cache_dir = root["cache_dir"].as<std::string>();
    if (root["variant_name"]) cfg.variant_name = root["variant_name"].as<std::string>();

    validate_config(cfg);
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

void validate_config(const PipelineConfig& cfg) {
    if (!plausible_language(cfg.language)) {
        throw ValidationError("language: not a plausible Wikipedia language code: '" +
                              cfg.language + "'");
    }
    if (!is_valid_date(cfg.cutoff_date) || !is_valid_date(cfg.collection_end)) {
        throw ValidationError("cutoff_date/collection_end: invalid calendar date");
    }
    if (!(cfg.cutoff_date < cfg.collection_end)) {
        throw ValidationError("cutoff_date < collection_end violated (" +
                              format_date(cfg.cutoff_date) + " vs " +
                              format_date(cfg.collection_end) + ")");
    }
    if (cfg.target_count <= 0) {
        throw ValidationError("target_count must be positive");
    }

    long long quota_sum = 0;
    bool any_unbounded = false;
    for (Domain d : kAllDomains) {
        const auto it = cfg.domain_quota.find(d);
        if (it == cfg.domain_quota.end()) {
            throw ValidationError("domain_quota is missing domain '" +
                                  std::string(domain_name(d)) + "'");
        }
        if (!it->second.has_value()) {
            any_unbounded = true;
        } else if (*it->second < 0) {
            throw ValidationError("domain_quota." + std::string(domain_name(d)) +
                                  " must be non-negative");
        } else {
            quota_sum += *it->second;
        }
    }
    if (any_unbounded && !cfg.variant_name.empty()) {
        throw ValidationError(
            "unbounded domain quotas are only allowed for variant-free runs "
            "(variant_name is set)");
    }
    if (!any_unbounded && quota_sum != cfg.target_count) {
        throw ValidationError("domain quotas sum to " + std::to_string(quota_sum) +
                              " but target_count is " + std::to_string(cfg.target_count));
    }

    if (cfg.ops_per_table < 1 || cfg.ops_per_table > 9) {
        throw ValidationError(
            "ops_per_table must be between 1 and 9 (only nine logical operations exist)");
    }

    const TableLimits& t = cfg.table_limits;
    if (t.min_rows <= 0 || t.min_cols <= 0) {
        throw ValidationError("table_limits: min_rows and min_cols must be positive");
    }
    if (t.min_rows > t.max_rows) throw ValidationError("table_limits: min_rows > max_rows");
    if (t.min_cols > t.max_cols) throw ValidationError("table_limits: min_cols > max_cols");
    if (t.min_nonempty_ratio < 0.0 || t.min_nonempty_ratio > 1.0) {
        throw ValidationError("table_limits: min_nonempty_ratio must be within [0,1]");
    }
    if (t.max_serialized_chars <= 0) {
        throw ValidationError("table_limits: max_serialized_chars must be positive");
    }
    if (t.max_cell_chars <= 0) {
        throw ValidationError("table_limits: max_cell_chars must be positive");
    }

    if (cfg.endpoints.sparql_url.empty() || cfg.endpoints.wiki_api_base.empty()) {
        throw ValidationError("endpoints must not be empty");
    }
    if (cfg.cache_dir.empty()) throw ValidationError("cache_dir must not be empty");
}

std::string config_to_yaml(const PipelineConfig& cfg) {
    YAML::Emitter out;
    out.SetDoublePrecision(std::numeric_limits<double>::max_digits10);
    out << YAML::BeginMap;
    out << YAML::Key << "language" << YAML::Value << cfg.language;
    out << YAML::Key << "cutoff_date" << YAML::Value << format_date(cfg.cutoff_date);
    out << YAML::Key << "collection_end" << YAML::Value << format_date(cfg.collection_end);
    out << YAML::Key << "target_count" << YAML::Value << cfg.target_count;
    out << YAML::Key << "domain_quota" << YAML::Value << YAML::BeginMap;
    for (Domain d : kAllDomains) {
        out << YAML::Key << std::string(domain_name(d)) << YAML::Value;
        const auto it = cfg.domain_quota.find(d);
        if (it != cfg.domain_quota.end() && it->second.has_value()) {
            out << *it->second;
        } else {
            out << "unbounded";
        }
    }
    out << YAML::EndMap;
    out << YAML::Key << "table_limits" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "min_rows" << YAML::Value << cfg.table_limits.min_rows;
    out << YAML::Key << "max_rows" << YAML::Value << cfg.table_limits.max_rows;
    out << YAML::Key << "min_cols" << YAML::Value << cfg.table_limits.min_cols;
    out << YAML::Key << "max_cols" << YAML::Value << cfg.table_limits.max_cols;
    out << YAML::Key << "min_nonempty_ratio" << YAML::Value
        << cfg.table_limits.min_nonempty_ratio;
    out << YAML::Key << "max_serialized_chars" << YAML::Value
        << cfg.table_limits.max_serialized_chars;
    out << YAML::Key << "max_cell_chars" << YAML::Value << cfg.table_limits.max_cell_chars;
    out << YAML::EndMap;
    out << YAML::Key << "ops_per_table" << YAML::Value << cfg.ops_per_table;
    out << YAML::Key << "rng_seed" << YAML::Value << cfg.rng_seed;
    out << YAML::Key << "endpoints" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "sparql_url" << YAML::Value << cfg.endpoints.sparql_url;
    out << YAML::Key << "wiki_api_base" << YAML::Value << cfg.endpoints.wiki_api_base;
    out << YAML::EndMap;
    out << YAML::Key << "cache_dir" << YAML::Value << cfg.cache_dir;
    out << YAML::Key << "variant_name" << YAML::Value << cfg.variant_name;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string dataset_name(const PipelineConfig& cfg) {
    const Date& a = cfg.cutoff_date;
    const Date& b = cfg.collection_end;
    char months[16];
    if (a.year == b.year && a.month == b.month) {
        std::snprintf(months, sizeof months, "%d", a.month);
    } else {
        std::snprintf(months, sizeof months, "%d-%d", a.month, b.month);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "FreshTab.%s/%02d.%s", months, b.year % 100,
                  cfg.language.c_str());
    std::string name(buf);
    if (!cfg.variant_name.empty()) {
        name += '.';
        name += cfg.variant_name;
    }
    return name;
}

}  // namespace freshtab
