#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace freshtab {

// Closed label set; every table carries exactly one.
enum class Domain { kCulture, kOther, kPolitics, kSport };

inline constexpr std::array<Domain, 4> kAllDomains = {
    Domain::kCulture, Domain::kOther, Domain::kPolitics, Domain::kSport};

std::string_view domain_name(Domain d);
std::optional<Domain> parse_domain(std::string_view name);

// How a page candidate earned its freshness guarantee.
enum class Strategy { kEventWindow, kNewPage };

std::string_view strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

}  // namespace freshtab
