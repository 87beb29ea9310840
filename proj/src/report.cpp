#include "freshtab/report.hpp"

#include "freshtab/errors.hpp"
#include "freshtab/metrics.hpp"
#include "freshtab/utf8.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace freshtab {

using nlohmann::json;

namespace {

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

std::string csv_escape(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string optional_cell(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string();
}

}  // namespace

ExternalScores load_external_scores(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read external scores file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    json doc = json::parse(text.str(), nullptr, false);
    if (doc.is_discarded() || !doc.is_array()) {
        throw ValidationError("external scores must be a JSON array of records");
    }
    ExternalScores scores;
    for (const auto& item : doc) {
        scores[{item.at("entry_id").get<std::string>(), item.at("setup").get<std::string>(),
                item.at("slot").get<int>()}] = item.at("score").get<double>();
    }
    return scores;
}

std::vector<MetricReport> aggregate_report(const std::vector<InsightRecord>& records,
                                           const std::vector<JudgeVerdict>& verdicts,
                                           const BenchmarkManifest* manifest,
                                           const std::vector<std::string>& group_by,
                                           const ExternalScores* external) {
    for (const auto& key : group_by) {
        if (std::find(kGroupByKeys.begin(), kGroupByKeys.end(), key) == kGroupByKeys.end()) {
            throw ValidationError("unknown group-by key: " + key);
        }
    }
    const bool by_domain =
        std::find(group_by.begin(), group_by.end(), "domain") != group_by.end();
    if (by_domain && manifest == nullptr) {
        throw ValidationError("grouping by domain needs the benchmark manifest");
    }

    std::map<std::string, Domain> entry_domain;
    if (manifest != nullptr) {
        for (const auto& entry : manifest->entries) entry_domain[entry.id] = entry.domain;
    }
    std::map<std::tuple<std::string, std::string, int>, bool> verdict_by_key;
    for (const auto& verdict : verdicts) {
        verdict_by_key[{verdict.entry_id, std::string(setup_name(verdict.setup)),
                        verdict.slot}] = verdict.factual;
    }

    auto key_of = [&](const InsightRecord& record) {
        GroupKey key;
        for (const auto& dim : group_by) {
            if (dim == "model") {
                key.model = record.model;
            } else if (dim == "benchmark") {
                key.benchmark = record.benchmark;
            } else if (dim == "setup") {
                key.setup = setup_name(record.setup);
            } else if (dim == "operation") {
                key.operation = record.operation.empty() ? "(none)" : record.operation;
            } else if (dim == "domain") {
                const auto it = entry_domain.find(record.entry_id);
                if (it == entry_domain.end()) {
                    throw ValidationError("record entry " + record.entry_id +
                                          " is not in the supplied manifest");
                }
                key.domain = domain_name(it->second);
            }
        }
        return key;
    };

    std::map<GroupKey, std::vector<const InsightRecord*>> groups;
    for (const auto& record : records) groups[key_of(record)].push_back(&record);

    std::vector<MetricReport> reports;
    reports.reserve(groups.size());
    for (const auto& [key, members] : groups) {
        MetricReport report;
        report.key = key;
        report.n = members.size();

        std::vector<std::string> ok_texts;
        std::size_t ok_count = 0;
        std::size_t judged = 0;
        std::size_t factual = 0;
        double external_sum = 0.0;
        std::size_t external_count = 0;
        for (const InsightRecord* record : members) {
            if (record->status == RecordStatus::kOk) {
                ++ok_count;
                ok_texts.push_back(record->text);
            }
            const auto vk = std::make_tuple(
                record->entry_id, std::string(setup_name(record->setup)), record->slot);
            if (const auto it = verdict_by_key.find(vk); it != verdict_by_key.end()) {
                ++judged;
                if (it->second) ++factual;
            }
            if (external != nullptr) {
                if (const auto it = external->find(vk); it != external->end()) {
                    external_sum += it->second;
                    ++external_count;
                }
            }
        }

        report.empty_rate = static_cast<double>(report.n - ok_count) /
                            static_cast<double>(report.n);
        if (ok_texts.size() >= 2) report.self_bleu4 = self_bleu4(ok_texts);
        if (!ok_texts.empty()) {
            report.unique_tokens = unique_tokens(ok_texts);
            double len_sum = 0.0;
            for (const auto& text : ok_texts) {
                len_sum += static_cast<double>(utf8_length(text));
            }
            report.avg_len_chars = len_sum / static_cast<double>(ok_texts.size());
            report.entropy_bits = shannon_entropy(ok_texts);
        }
        if (judged > 0) {
            report.judge_factual_rate =
                static_cast<double>(factual) / static_cast<double>(judged);
        }
        if (external_count > 0) {
            report.external_score = external_sum / static_cast<double>(external_count);
        }
        reports.push_back(std::move(report));
    }
    std::sort(reports.begin(), reports.end(),
              [](const MetricReport& a, const MetricReport& b) { return a.key < b.key; });
    return reports;
}

std::string report_to_csv(const std::vector<MetricReport>& reports) {
    std::ostringstream out;
    out << "model,benchmark,setup,domain,operation,n,empty_rate,self_bleu4,unique_tokens,"
           "avg_len_chars,entropy_bits,judge_factual_rate,external_score\n";
    for (const auto& r : reports) {
        out << csv_escape(r.key.model) << ',' << csv_escape(r.key.benchmark) << ','
            << csv_escape(r.key.setup) << ',' << csv_escape(r.key.domain) << ','
            << csv_escape(r.key.operation) << ',' << r.n << ','
            << format_number(r.empty_rate) << ',' << optional_cell(r.self_bleu4) << ','
            << optional_cell(r.unique_tokens) << ',' << optional_cell(r.avg_len_chars) << ','
            << optional_cell(r.entropy_bits) << ',' << optional_cell(r.judge_factual_rate)
            << ',' << optional_cell(r.external_score) << "\n";
    }
    return out.str();
}

std::string report_to_json(const std::vector<MetricReport>& reports) {
    json rows = json::array();
    for (const auto& r : reports) {
        json row = {
            {"avg_len_chars", r.avg_len_chars ? json(*r.avg_len_chars) : json()},
            {"benchmark", r.key.benchmark},
            {"domain", r.key.domain},
            {"empty_rate", r.empty_rate},
            {"entropy_bits", r.entropy_bits ? json(*r.entropy_bits) : json()},
            {"external_score", r.external_score ? json(*r.external_score) : json()},
            {"judge_factual_rate",
             r.judge_factual_rate ? json(*r.judge_factual_rate) : json()},
            {"model", r.key.model},
            {"n", r.n},
            {"operation", r.key.operation},
            {"self_bleu4", r.self_bleu4 ? json(*r.self_bleu4) : json()},
            {"setup", r.key.setup},
            {"unique_tokens", r.unique_tokens ? json(*r.unique_tokens) : json()},
        };
        rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
}

std::vector<SignificanceCell> significance_matrix(
    const std::string& label_a, const std::vector<InsightRecord>& records_a,
    const std::vector<JudgeVerdict>& verdicts_a, const std::string& label_b,
    const std::vector<InsightRecord>& records_b,
    const std::vector<JudgeVerdict>& verdicts_b) {
    auto factual_counts = [](const std::vector<InsightRecord>& records,
                             const std::vector<JudgeVerdict>& verdicts) {
        std::map<std::tuple<std::string, std::string, int>, bool> by_key;
        for (const auto& v : verdicts) {
            by_key[{v.entry_id, std::string(setup_name(v.setup)), v.slot}] = v.factual;
        }
        std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // model -> (k, n)
        for (const auto& record : records) {
            auto& [k, n] = counts[record.model];
            ++n;
            const auto it = by_key.find(
                {record.entry_id, std::string(setup_name(record.setup)), record.slot});
            if (it != by_key.end() && it->second) ++k;
        }
        return counts;
    };

    const auto counts_a = factual_counts(records_a, verdicts_a);
    const auto counts_b = factual_counts(records_b, verdicts_b);
    std::vector<SignificanceCell> cells;
    for (const auto& [model, ka_na] : counts_a) {
        const auto it = counts_b.find(model);
        if (it == counts_b.end()) continue;
        SignificanceCell cell;
        cell.model = model;
        cell.label_a = label_a;
        cell.label_b = label_b;
        cell.stat = z_test_proportions(ka_na.first, ka_na.second, it->second.first,
                                       it->second.second);
        cells.push_back(std::move(cell));
    }
    return cells;
}

std::string significance_to_csv(const std::vector<SignificanceCell>& cells) {
    std::ostringstream out;
    out << "model,benchmark_a,benchmark_b,z,p_value,n1,n2\n";
    for (const auto& cell : cells) {
        out << csv_escape(cell.model) << ',' << csv_escape(cell.label_a) << ','
            << csv_escape(cell.label_b) << ',' << format_number(cell.stat.statistic) << ','
            << format_number(cell.stat.p_value) << ',' << cell.stat.n1 << ',' << cell.stat.n2
            << "\n";
    }
    return out.str();
}

std::string significance_to_json(const std::vector<SignificanceCell>& cells) {
    json rows = json::array();
    for (const auto& cell : cells) {
        rows.push_back(json{{"benchmark_a", cell.label_a},
                            {"benchmark_b", cell.label_b},
                            {"model", cell.model},
                            {"n1", cell.stat.n1},
                            {"n2", cell.stat.n2},
                            {"p_value", cell.stat.p_value},
                            {"test", cell.stat.test},
                            {"z", cell.stat.statistic}});
    }
    return rows.dump(2) + "\n";
}

}  // namespace freshtab
