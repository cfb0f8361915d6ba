#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ceval/pipeline.hpp"

namespace ceval {

enum class ErrorCategory {
    unrecognized_character,
    instruction_error,
    absolute_expression_error,
    invalid_register_usage,
    undefined_reference_error,
    symbol_redefinition_error,
    segmentation_fault,
    illegal_instruction,
    wrong_result,
    // harness extensions, reported separately from the nine canonical rows
    other_compile_error,
    other_exec_error,
};

std::string_view category_name(ErrorCategory category);    // "InstructionError"
std::string_view category_display(ErrorCategory category); // "Instruction Error"
std::optional<ErrorCategory> try_parse_category(std::string_view name);
ErrorCategory parse_category(std::string_view name);
bool is_compile_category(ErrorCategory category);
std::span<const ErrorCategory> category_table_order(); // nine canonical rows, then the two Other buckets

enum class VerdictKind { success, compile_error, exec_error };
std::string_view verdict_kind_name(VerdictKind kind);
VerdictKind parse_verdict_kind(std::string_view name);

struct Verdict {
    VerdictKind kind = VerdictKind::success;
    std::optional<ErrorCategory> category; // absent for success
    std::string evidence;                  // diagnostic line or diff excerpt
};

struct ComparisonReport {
    bool matched = false;
    bool token_count_mismatch = false;
    std::size_t actual_tokens = 0;
    std::size_t expected_tokens = 0;
    std::size_t first_mismatch_index = 0; // valid when !matched && !token_count_mismatch
    std::string actual_token;
    std::string expected_token;

    std::string detail() const;
};

// Whitespace-tokenized comparison: token counts must match; numeric tokens
// compare within absolute tolerance, all others byte-equal.
ComparisonReport compare_outputs(std::string_view actual, std::string_view expected,
                                 double tolerance);

struct ClassifierRule {
    std::string pattern;
    ErrorCategory category;
    std::string toolchain_tag; // provenance only; every rule applies to every diagnostic
    std::regex compiled;       // case-insensitive ECMAScript
};

// Ordered diagnostic-pattern table. The first diagnostic line matching any
// rule decides the category; the line's first matching rule wins.
class RuleTable {
public:
    static RuleTable load(const std::filesystem::path& path);
    static RuleTable parse(std::string_view text, std::string_view origin);

    ErrorCategory classify_build_failure(std::string_view diagnostics) const;
    // Every (line, first matching rule) pair counts one occurrence.
    std::map<ErrorCategory, int64_t> count_occurrences(std::string_view diagnostics) const;

    std::size_t size() const { return rules_.size(); }
    const std::vector<ClassifierRule>& rules() const { return rules_; }

private:
    std::vector<ClassifierRule> rules_;
};

ErrorCategory classify_exec_failure(const ExecOutcome& exec, const ComparisonReport& comparison);

// The first diagnostic line matching any rule, else the first non-empty
// line, else "(no diagnostics)". Shared by judging and re-classification.
std::string classification_evidence(std::string_view diagnostics, const RuleTable& rules);

// Collapses one sample's outcomes into its Verdict. exec must be present
// iff the build succeeded; anything else raises inconsistent_input.
Verdict judge(const BuildOutcome& build, const std::optional<ExecOutcome>& exec,
              std::string_view expected_output, double tolerance, const RuleTable& rules);

} // namespace ceval
