#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace freshtab {

struct StatResult {
    std::string test;
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
};

// Pooled two-proportion z-test, two-sided p-value from the normal CDF.
// Degenerate pooled variance (all successes or all failures on both sides)
// gives z = 0, p = 1.
StatResult z_test_proportions(std::size_t k1, std::size_t n1, std::size_t k2,
                              std::size_t n2);

// Sample Pearson correlation. Throws UndefinedInputError for length
// mismatch, fewer than two points, or zero variance on either side.
double pearson(std::span<const double> x, std::span<const double> y);

// Upper tail of the standard normal, exposed for cross-checks.
double normal_sf(double z);

}  // namespace freshtab
