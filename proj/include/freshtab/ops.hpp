#pragma once

#include <string>
#include <vector>

namespace freshtab {

// One of the nine insight types a model can be steered towards.
struct LogicalOperation {
    std::string name;
    std::string description;
    std::string example_phrase;
};

inline constexpr int kOperationCount = 9;

// The closed set, name-sorted. Exactly nine, names unique.
const std::vector<LogicalOperation>& logical_operations();

const LogicalOperation* find_operation(std::string_view name);

bool is_operation_name(std::string_view name);

}  // namespace freshtab
