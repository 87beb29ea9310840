#include "freshtab/prompts.hpp"

#include <sstream>

namespace freshtab {
namespace {

void append_operation_line(std::ostringstream& out, const LogicalOperation& op) {
    out << "- " << op.name << ": " << op.description << " (e.g., " << op.example_phrase
        << ")\n";
}

}  // namespace

std::string build_direct_prompt(const CleanTable& table, const LogicalOperation& op) {
    std::ostringstream out;
    out << "You are a careful data analyst. Study the table below and write one factual "
           "insight about it.\n\n"
        << "Table:\n"
        << serialize_table(table) << "\n\n"
        << "Write one insight of this type:\n";
    append_operation_line(out, op);
    out << "\nFirst think through the table step by step, then state the final insight. "
           "The insight must be a single sentence, fully supported by the table.\n"
        << "Respond as JSON with exactly these fields: \"reasoning\" (your step-by-step "
           "analysis) and \"insight\" (the final sentence).";
    return out.str();
}

std::string build_choice_prompt(const CleanTable& table) {
    std::ostringstream out;
    out << "You are a careful data analyst. Study the table below and write five factual "
           "insights about it.\n\n"
        << "Table:\n"
        << serialize_table(table) << "\n\n"
        << "These are the available insight types:\n";
    for (const auto& op : logical_operations()) append_operation_line(out, op);
    out << "\nWrite exactly five insights, choosing for each one whichever type fits the "
           "table best. Each insight must be a single sentence, fully supported by the "
           "table. Think through the table step by step before answering.\n"
        << "Respond as JSON with a field \"insights\": a list of exactly five objects, "
           "each with \"operation\" (the chosen type name) and \"insight\" (the "
           "sentence).";
    return out.str();
}

std::string build_judge_prompt(const CleanTable& table, const std::string& insight) {
    std::ostringstream out;
    out << "You are reviewing an insight written about a data table. Mark every factual "
           "problem at the word level: quote the exact words of the insight that are "
           "problematic (the span) and label each span with one of these categories:\n"
        << "- incorrect: the claim contradicts the table.\n"
        << "- not-checkable: the claim cannot be verified from the table alone.\n"
        << "- misleading: technically derivable from the table but creates a false "
           "impression.\n"
        << "- other: any other factual problem.\n\n"
        << "Table:\n"
        << serialize_table(table) << "\n\n"
        << "Insight:\n"
        << insight << "\n\n"
        << "If the insight is fully supported by the table, return an empty error list. "
           "Respond as JSON with a field \"errors\": a list of objects, each with "
           "\"category\" and \"span\".";
    return out.str();
}

}  // namespace freshtab
