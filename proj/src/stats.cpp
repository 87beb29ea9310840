#include "freshtab/stats.hpp"

#include "freshtab/errors.hpp"

#include <cmath>

namespace freshtab {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

StatResult z_test_proportions(std::size_t k1, std::size_t n1, std::size_t k2,
                              std::size_t n2) {
    if (n1 == 0 || n2 == 0 || k1 > n1 || k2 > n2) {
        throw UndefinedInputError("z-test requires 0 <= k <= n with n > 0 on both sides");
    }
    StatResult result;
    result.test = "two-proportion-z";
    result.n1 = n1;
    result.n2 = n2;
    const double p1 = static_cast<double>(k1) / static_cast<double>(n1);
    const double p2 = static_cast<double>(k2) / static_cast<double>(n2);
    const double pooled =
        static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
    const double variance =
        pooled * (1.0 - pooled) *
        (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2));
    if (variance <= 0.0) {
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    result.statistic = (p1 - p2) / std::sqrt(variance);
    result.p_value = 2.0 * normal_sf(std::fabs(result.statistic));
    return result;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw UndefinedInputError("pearson requires equally long inputs");
    }
    if (x.size() < 2) {
        throw UndefinedInputError("pearson requires at least two points");
    }
    const auto n = static_cast<double>(x.size());
    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw UndefinedInputError("pearson undefined for zero-variance input");
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace freshtab
