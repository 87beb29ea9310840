#include "freshtab/ops.hpp"

namespace freshtab {

const std::vector<LogicalOperation>& logical_operations() {
    static const std::vector<LogicalOperation> ops = {
        {"aggregation",
         "states an aggregate statistic computed over the data, such as a sum or an average",
         "the average home team score"},
        {"all", "states that every item in the table shares a common property",
         "all games were played on the same date"},
        {"comparative", "compares two entities from the table on some property",
         "comparing the scores of two teams"},
        {"count", "states how many entities fulfill some condition",
         "the number of teams that played at a particular venue"},
        {"negation", "makes a negative claim about an entity",
         "Team A never played against Team B"},
        {"ordinal", "states the rank of an entity on some aspect",
         "the second largest crowd to watch a match at the venue"},
        {"simple", "reads off a single fact without any higher-order operation",
         "Player X is from country Y"},
        {"superlative", "states a maximum or minimum value in the data",
         "the highest score by any team"},
        {"unique", "states something about the distinct values of a column",
         "the matches were played at different venues"},
    };
    return ops;
}

const LogicalOperation* find_operation(std::string_view name) {
    for (const auto& op : logical_operations()) {
        if (op.name == name) return &op;
    }
    return nullptr;
}

bool is_operation_name(std::string_view name) { return find_operation(name) != nullptr; }

}  // namespace freshtab
