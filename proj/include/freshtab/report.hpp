#pragma once

#include "freshtab/curator.hpp"
#include "freshtab/genharness.hpp"
#include "freshtab/judge.hpp"
#include "freshtab/stats.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace freshtab {

// Grouping dimensions; an empty component was not grouped on.
struct GroupKey {
    std::string model;
    std::string benchmark;
    std::string setup;
    std::string domain;
    std::string operation;

    auto operator<=>(const GroupKey&) const = default;
};

struct MetricReport {
    GroupKey key;
    std::size_t n = 0;       // all records in the group, failures included
    double empty_rate = 0.0; // exactly (status != ok) / n
    std::optional<double> self_bleu4;       // needs >= 2 ok insights
    std::optional<double> unique_tokens;    // mean distinct tokens per ok insight
    std::optional<double> avg_len_chars;    // mean code points per ok insight
    std::optional<double> entropy_bits;     // pooled over ok insights
    std::optional<double> judge_factual_rate;
    std::optional<double> external_score;   // ingested scorer mean, if supplied
};

inline const std::vector<std::string> kGroupByKeys = {"model", "benchmark", "setup",
                                                      "domain", "operation"};

// (entry_id, setup, slot) -> score from an externally run scorer.
using ExternalScores = std::map<std::tuple<std::string, std::string, int>, double>;

ExternalScores load_external_scores(const std::string& path);

// One report per group, sorted by key. The manifest supplies the domain of
// each entry and may be null when not grouping by domain.
std::vector<MetricReport> aggregate_report(
    const std::vector<InsightRecord>& records, const std::vector<JudgeVerdict>& verdicts,
    const BenchmarkManifest* manifest, const std::vector<std::string>& group_by,
    const ExternalScores* external = nullptr);

std::string report_to_csv(const std::vector<MetricReport>& reports);
std::string report_to_json(const std::vector<MetricReport>& reports);

// Model-by-benchmark-pair significance of judge factual rates.
struct SignificanceCell {
    std::string model;
    std::string label_a;
    std::string label_b;
    StatResult stat;
};

std::vector<SignificanceCell> significance_matrix(
    const std::string& label_a, const std::vector<InsightRecord>& records_a,
    const std::vector<JudgeVerdict>& verdicts_a, const std::string& label_b,
    const std::vector<InsightRecord>& records_b, const std::vector<JudgeVerdict>& verdicts_b);

std::string significance_to_csv(const std::vector<SignificanceCell>& cells);
std::string significance_to_json(const std::vector<SignificanceCell>& cells);

}  // namespace freshtab
