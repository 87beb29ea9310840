#include "freshtab/sparql.hpp"

#include "freshtab/errors.hpp"

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace freshtab {
namespace {

std::string wikipedia_site(const std::string& language) {
    return "https://" + language + ".wikipedia.org/";
}

std::string datetime_literal(const Date& d, bool end_of_day) {
    return "\"" + format_date(d) + (end_of_day ? "T23:59:59Z" : "T00:00:00Z") +
           "\"^^xsd:dateTime";
}

}  // namespace

ConceptCatalog parse_catalog(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("catalog YAML parse error: ") + e.what());
    }
    if (!root.IsMap() || !root["concepts"] || !root["concepts"].IsSequence()) {
        throw ConfigError("catalog must be a mapping with a 'concepts' list");
    }
    ConceptCatalog catalog;
    std::set<std::string> ids;
    for (const auto& node : root["concepts"]) {
        ConceptEntry entry;
        entry.id = node["id"].as<std::string>();
        if (!ids.insert(entry.id).second) {
            throw ConfigError("duplicate catalog entry id: " + entry.id);
        }
        const auto domain = parse_domain(node["domain"].as<std::string>());
        if (!domain) {
            throw ConfigError("catalog entry " + entry.id + ": unknown domain");
        }
        entry.domain = *domain;
        const auto strategy = parse_strategy(node["strategy"].as<std::string>());
        if (!strategy) {
            throw ConfigError("catalog entry " + entry.id + ": unknown strategy");
        }
        entry.strategy = *strategy;
        entry.class_qid = node["class"].as<std::string>();
        if (node["date_property"]) {
            entry.date_property = node["date_property"].as<std::string>();
        }
        if (entry.strategy == Strategy::kEventWindow && entry.date_property.empty()) {
            throw ConfigError("catalog entry " + entry.id +
                              ": event-window entries need a date_property");
        }
        if (node["note"]) entry.note = node["note"].as<std::string>();
        catalog.entries.push_back(std::move(entry));
    }
    std::set<Domain> covered;
    for (const auto& e : catalog.entries) covered.insert(e.domain);
    for (Domain d : kAllDomains) {
        if (!covered.contains(d)) {
            throw ConfigError("catalog has no entry for domain '" +
                              std::string(domain_name(d)) + "'");
        }
    }
    return catalog;
}

ConceptCatalog load_catalog(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read catalog file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_catalog(text.str());
}

std::string build_event_query(const ConceptEntry& entry, const Date& window_start,
                              const Date& window_end, const std::string& language) {
    std::ostringstream q;
    q << "SELECT DISTINCT ?item ?article ?title ?date WHERE {\n"
      << "  ?item wdt:P31/wdt:P279* wd:" << entry.class_qid << " .\n"
      << "  ?item wdt:" << entry.date_property << " ?date .\n"
      << "  FILTER(?date >= " << datetime_literal(window_start, false) << " && ?date <= "
      << datetime_literal(window_end, true) << ")\n"
      << "  ?article schema:about ?item ;\n"
      << "           schema:isPartOf <" << wikipedia_site(language) << "> ;\n"
      << "           schema:name ?title .\n"
      << "}\n"
      << "ORDER BY ?item\n"
      << "LIMIT 2000";
    return q.str();
}

std::string build_newpage_query(const ConceptEntry& entry, const Date& window_start,
                                const Date& window_end, const std::string& language) {
    std::ostringstream q;
    q << "SELECT DISTINCT ?item ?article ?title ?modified WHERE {\n"
      << "  ?item wdt:P31/wdt:P279* wd:" << entry.class_qid << " .\n"
      << "  ?item schema:dateModified ?modified .\n"
      << "  FILTER(?modified >= " << datetime_literal(window_start, false)
      << " && ?modified <= " << datetime_literal(window_end, true) << ")\n"
      << "  ?article schema:about ?item ;\n"
      << "           schema:isPartOf <" << wikipedia_site(language) << "> ;\n"
      << "           schema:name ?title .\n"
      << "}\n"
      << "ORDER BY ?item\n"
      << "LIMIT 2000";
    return q.str();
}

std::vector<Binding> parse_sparql_json(const std::string& body) {
    nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("results") ||
        !doc["results"].contains("bindings") || !doc["results"]["bindings"].is_array()) {
        throw MalformedResponseError("not a SPARQL-JSON result document");
    }
    std::vector<Binding> rows;
    for (const auto& item : doc["results"]["bindings"]) {
        Binding row;
        for (const auto& [var, cell] : item.items()) {
            if (!cell.contains("value") || !cell["value"].is_string()) {
                throw MalformedResponseError("binding '" + var + "' has no string value");
            }
            row[var] = cell["value"].get<std::string>();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

HttpRequest sparql_request(const std::string& endpoint, const std::string& query) {
    HttpRequest request;
    request.method = "POST";
    request.url = endpoint;
    request.body = "query=" + url_encode_component(query);
    request.content_type = "application/x-www-form-urlencoded";
    request.accept = "application/sparql-results+json";
    return request;
}

std::vector<Binding> run_query(CachedHttpClient& client, const std::string& endpoint,
                               const std::string& query) {
    return parse_sparql_json(client.fetch(sparql_request(endpoint, query)));
}

}  // namespace freshtab
