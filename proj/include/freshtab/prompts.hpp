#pragma once

#include "freshtab/ops.hpp"
#include "freshtab/table.hpp"

#include <string>

namespace freshtab {

// Chain-of-thought prompt for one prescribed operation: the serialized
// table verbatim, exactly one operation description, an instruction to
// reason first. Golden-tested; change goldens deliberately.
std::string build_direct_prompt(const CleanTable& table, const LogicalOperation& op);

// All nine operation descriptions, five insights requested in one go, the
// model picks operations as it sees fit.
std::string build_choice_prompt(const CleanTable& table);

// Mirrors the annotation instructions: word-level error spans, four
// categories, empty error list when fully supported.
std::string build_judge_prompt(const CleanTable& table, const std::string& insight);

}  // namespace freshtab
