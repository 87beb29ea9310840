#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace freshtab {

// The single tokenization behind every diversity metric: case-folded
// (ASCII, Latin-1, basic Cyrillic), split on whitespace and ASCII
// punctuation plus common typographic punctuation. Language-agnostic; no
// stemming. Cross-language comparisons stay within-language.
std::vector<std::string> tokenize(std::string_view text);

// Mean sentence-BLEU (n-grams up to 4) of each insight against all the
// others as references. Modified n-gram precisions are clipped per
// reference maximum; a zero precision is replaced by epsilon = 1e-9; orders
// longer than the hypothesis are excluded from the geometric mean; brevity
// penalty uses the reference length closest to the hypothesis (ties to the
// shorter). Lower = more diverse. Requires >= 2 insights.
double self_bleu4(const std::vector<std::string>& insights);

inline constexpr double kBleuEpsilon = 1e-9;

// Mean count of distinct tokens per insight.
double unique_tokens(const std::vector<std::string>& insights);

// Shannon entropy, in bits, of the pooled token distribution.
double shannon_entropy(const std::vector<std::string>& insights);

}  // namespace freshtab
