#include "freshtab/domain.hpp"

namespace freshtab {

std::string_view domain_name(Domain d) {
    switch (d) {
        case Domain::kCulture: return "culture";
        case Domain::kOther: return "other";
        case Domain::kPolitics: return "politics";
        case Domain::kSport: return "sport";
    }
    return "other";
}

std::optional<Domain> parse_domain(std::string_view name) {
    for (Domain d : kAllDomains) {
        if (domain_name(d) == name) return d;
    }
    return std::nullopt;
}

std::string_view strategy_name(Strategy s) {
    return s == Strategy::kEventWindow ? "event-window" : "new-page";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    if (name == "event-window") return Strategy::kEventWindow;
    if (name == "new-page") return Strategy::kNewPage;
    return std::nullopt;
}

}  // namespace freshtab
