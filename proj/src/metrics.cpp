#include "freshtab/metrics.hpp"

#include "freshtab/errors.hpp"
#include "freshtab/utf8.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <unordered_map>

namespace freshtab {
namespace {

bool is_ascii_punct(char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

// Typographic punctuation treated as token boundaries alongside ASCII.
bool is_wide_punct(std::string_view s, std::size_t i, std::size_t& len) {
    static constexpr std::string_view marks[] = {
        "–", "—", "‘", "’", "“", "”",
        "…", "«", "»", "„", "·"};
    for (std::string_view m : marks) {
        if (s.substr(i, m.size()) == m) {
            len = m.size();
            return true;
        }
    }
    return false;
}

using Ngram = std::string;  // tokens joined by '\x1f'

std::unordered_map<Ngram, int> ngram_counts(const std::vector<std::string>& tokens, int n) {
    std::unordered_map<Ngram, int> counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        Ngram gram;
        for (int k = 0; k < n; ++k) {
            if (k > 0) gram += '\x1f';
            gram += tokens[i + static_cast<std::size_t>(k)];
        }
        counts[gram] += 1;
    }
    return counts;
}

// Sentence BLEU per the definition in the header.
double sentence_bleu(const std::vector<std::string>& hypothesis,
                     const std::vector<std::vector<std::string>>& references) {
    if (hypothesis.empty()) return 0.0;

    double log_sum = 0.0;
    int orders_used = 0;
    for (int n = 1; n <= 4; ++n) {
        const auto hyp_counts = ngram_counts(hypothesis, n);
        long long total = 0;
        for (const auto& [gram, count] : hyp_counts) total += count;
        if (total == 0) continue;  // hypothesis shorter than n
        long long matches = 0;
        std::vector<std::unordered_map<Ngram, int>> ref_counts;
        ref_counts.reserve(references.size());
        for (const auto& ref : references) ref_counts.push_back(ngram_counts(ref, n));
        for (const auto& [gram, count] : hyp_counts) {
            int clip = 0;
            for (const auto& rc : ref_counts) {
                const auto it = rc.find(gram);
                if (it != rc.end()) clip = std::max(clip, it->second);
            }
            matches += std::min(count, clip);
        }
        const double precision =
            matches == 0 ? kBleuEpsilon
                         : static_cast<double>(matches) / static_cast<double>(total);
        log_sum += std::log(precision);
        ++orders_used;
    }
    if (orders_used == 0) return 0.0;
    const double geo_mean = std::exp(log_sum / orders_used);

    // closest reference length; ties broken towards the shorter
    const auto c = static_cast<long long>(hypothesis.size());
    long long r = 0;
    long long best_gap = -1;
    for (const auto& ref : references) {
        const auto len = static_cast<long long>(ref.size());
        const long long gap = std::llabs(len - c);
        if (best_gap < 0 || gap < best_gap || (gap == best_gap && len < r)) {
            best_gap = gap;
            r = len;
        }
    }
    const double brevity =
        c >= r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
    return brevity * geo_mean;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    const std::string folded = fold_case(text);
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < folded.size()) {
        const char c = folded[i];
        std::size_t wide_len = 0;
        if (std::isspace(static_cast<unsigned char>(c)) || is_ascii_punct(c) ||
            is_wide_punct(folded, i, wide_len)) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
            i += wide_len == 0 ? 1 : wide_len;
            continue;
        }
        current += c;
        ++i;
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

double self_bleu4(const std::vector<std::string>& insights) {
    if (insights.size() < 2) {
        throw UndefinedInputError("self-BLEU needs at least two insights, got " +
                                  std::to_string(insights.size()));
    }
    std::vector<std::vector<std::string>> token_lists;
    token_lists.reserve(insights.size());
    for (const auto& text : insights) token_lists.push_back(tokenize(text));

    double sum = 0.0;
    for (std::size_t i = 0; i < token_lists.size(); ++i) {
        std::vector<std::vector<std::string>> references;
        references.reserve(token_lists.size() - 1);
        for (std::size_t j = 0; j < token_lists.size(); ++j) {
            if (j != i) references.push_back(token_lists[j]);
        }
        sum += sentence_bleu(token_lists[i], references);
    }
    return sum / static_cast<double>(token_lists.size());
}

double unique_tokens(const std::vector<std::string>& insights) {
    if (insights.empty()) {
        throw UndefinedInputError("unique_tokens needs at least one insight");
    }
    double sum = 0.0;
    for (const auto& text : insights) {
        const auto tokens = tokenize(text);
        const std::set<std::string> distinct(tokens.begin(), tokens.end());
        sum += static_cast<double>(distinct.size());
    }
    return sum / static_cast<double>(insights.size());
}

double shannon_entropy(const std::vector<std::string>& insights) {
    std::map<std::string, long long> counts;
    long long total = 0;
    for (const auto& text : insights) {
        for (auto& token : tokenize(text)) {
            counts[token] += 1;
            ++total;
        }
    }
    if (total == 0) return 0.0;
    double entropy = 0.0;
    for (const auto& [token, count] : counts) {
        const double p = static_cast<double>(count) / static_cast<double>(total);
        entropy -= p * std::log2(p);
    }
    return entropy;
}

}  // namespace freshtab
