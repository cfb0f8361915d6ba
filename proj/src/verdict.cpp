#include "ceval/verdict.hpp"

#include <array>
#include <cmath>

#include "ceval/errors.hpp"
#include "ceval/util.hpp"

namespace ceval {

namespace {

constexpr std::array<ErrorCategory, 11> kTableOrder = {
    ErrorCategory::unrecognized_character,  ErrorCategory::instruction_error,
    ErrorCategory::absolute_expression_error, ErrorCategory::invalid_register_usage,
    ErrorCategory::undefined_reference_error, ErrorCategory::symbol_redefinition_error,
    ErrorCategory::segmentation_fault,      ErrorCategory::illegal_instruction,
    ErrorCategory::wrong_result,            ErrorCategory::other_compile_error,
    ErrorCategory::other_exec_error,
};

struct CategoryInfo {
    ErrorCategory category;
    std::string_view name;
    std::string_view display;
};

constexpr std::array<CategoryInfo, 11> kCategoryInfo = {{
    {ErrorCategory::unrecognized_character, "UnrecognizedCharacter", "Unrecognized Character"},
    {ErrorCategory::instruction_error, "InstructionError", "Instruction Error"},
    {ErrorCategory::absolute_expression_error, "AbsoluteExpressionError",
     "Absolute Expression Error"},
    {ErrorCategory::invalid_register_usage, "InvalidRegisterUsage", "Invalid Register Usage"},
    {ErrorCategory::undefined_reference_error, "UndefinedReferenceError",
     "Undefined Reference Error"},
    {ErrorCategory::symbol_redefinition_error, "SymbolRedefinitionError",
     "Symbol Redefinition Error"},
    {ErrorCategory::segmentation_fault, "SegmentationFault", "Segmentation Fault"},
    {ErrorCategory::illegal_instruction, "IllegalInstruction", "Illegal Instruction"},
    {ErrorCategory::wrong_result, "WrongResult", "Wrong Result"},
    {ErrorCategory::other_compile_error, "OtherCompileError", "Other Compile Error"},
    {ErrorCategory::other_exec_error, "OtherExecError", "Other Exec Error"},
}};

const CategoryInfo& info_of(ErrorCategory category) {
    for (const CategoryInfo& info : kCategoryInfo)
        if (info.category == category)
            return info;
    return kCategoryInfo.back();
}

std::string first_nonempty_line(std::string_view text) {
    for (const std::string& line : split_lines(text))
        if (!trim(line).empty())
            return std::string(trim(line));
    return "(no diagnostics)";
}

} // namespace

std::string_view category_name(ErrorCategory category) { return info_of(category).name; }
std::string_view category_display(ErrorCategory category) { return info_of(category).display; }

std::optional<ErrorCategory> try_parse_category(std::string_view name) {
    for (const CategoryInfo& info : kCategoryInfo)
        if (info.name == name || info.display == name)
            return info.category;
    return std::nullopt;
}

ErrorCategory parse_category(std::string_view name) {
    if (auto c = try_parse_category(name))
        return *c;
    raise(errc::manifest_parse, "unknown error category \"" + std::string(name) + "\"");
}

bool is_compile_category(ErrorCategory category) {
    switch (category) {
    case ErrorCategory::unrecognized_character:
    case ErrorCategory::instruction_error:
    case ErrorCategory::absolute_expression_error:
    case ErrorCategory::invalid_register_usage:
    case ErrorCategory::undefined_reference_error:
    case ErrorCategory::symbol_redefinition_error:
    case ErrorCategory::other_compile_error:
        return true;
    default:
        return false;
    }
}

std::span<const ErrorCategory> category_table_order() { return kTableOrder; }

std::string_view verdict_kind_name(VerdictKind kind) {
    switch (kind) {
    case VerdictKind::success: return "Success";
    case VerdictKind::compile_error: return "CompileError";
    case VerdictKind::exec_error: return "ExecError";
    }
    return "Success";
}

VerdictKind parse_verdict_kind(std::string_view name) {
    if (name == "Success")
        return VerdictKind::success;
    if (name == "CompileError")
        return VerdictKind::compile_error;
    if (name == "ExecError")
        return VerdictKind::exec_error;
    raise(errc::store_parse, "unknown verdict kind \"" + std::string(name) + "\"");
}

std::string ComparisonReport::detail() const {
    if (matched)
        return "outputs match";
    if (token_count_mismatch)
        return "token count differs: actual " + std::to_string(actual_tokens) + " vs expected " +
               std::to_string(expected_tokens);
    return "token " + std::to_string(first_mismatch_index) + ": expected " + expected_token +
           ", got " + actual_token;
}

ComparisonReport compare_outputs(std::string_view actual, std::string_view expected,
                                 double tolerance) {
    auto tokenize = [](std::string_view text) {
        std::vector<std::string> tokens;
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            std::size_t start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            if (i > start)
                tokens.emplace_back(text.substr(start, i - start));
        }
        return tokens;
    };

    ComparisonReport report;
    std::vector<std::string> a = tokenize(actual);
    std::vector<std::string> e = tokenize(expected);
    report.actual_tokens = a.size();
    report.expected_tokens = e.size();
    if (a.size() != e.size()) {
        report.token_count_mismatch = true;
        return report;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool equal;
        auto na = parse_number(a[i]);
        auto ne = parse_number(e[i]);
        if (na && ne)
            equal = std::fabs(*na - *ne) <= tolerance;
        else
            equal = a[i] == e[i];
        if (!equal) {
            report.first_mismatch_index = i;
            report.actual_token = a[i];
            report.expected_token = e[i];
            return report;
        }
    }
    report.matched = true;
    return report;
}

RuleTable RuleTable::parse(std::string_view text, std::string_view origin) {
    RuleTable table;
    std::size_t lineno = 0;
    for (const std::string& raw : split_lines(text)) {
        ++lineno;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        std::vector<std::string> fields = split(raw, '\t');
        std::vector<std::string> nonempty;
        for (std::string& f : fields)
            if (!trim(f).empty())
                nonempty.emplace_back(trim(f));
        if (nonempty.size() != 3)
            raise(errc::rule_parse, std::string(origin) + ":" + std::to_string(lineno) +
                                        ": want pattern<TAB>category<TAB>toolchain, got " +
                                        std::to_string(nonempty.size()) + " fields");
        ClassifierRule rule;
        rule.pattern = nonempty[0];
        auto category = try_parse_category(nonempty[1]);
        if (!category)
            raise(errc::rule_parse, std::string(origin) + ":" + std::to_string(lineno) +
                                        ": unknown category \"" + nonempty[1] + "\"");
        rule.category = *category;
        rule.toolchain_tag = nonempty[2];
        try {
            rule.compiled = std::regex(rule.pattern, std::regex::ECMAScript | std::regex::icase);
        } catch (const std::regex_error& e) {
            raise(errc::rule_parse, std::string(origin) + ":" + std::to_string(lineno) +
                                        ": bad regex: " + e.what());
        }
        table.rules_.push_back(std::move(rule));
    }
    return table;
}

RuleTable RuleTable::load(const std::filesystem::path& path) {
    return parse(read_file(path), path.string());
}

ErrorCategory RuleTable::classify_build_failure(std::string_view diagnostics) const {
    for (const std::string& line : split_lines(diagnostics)) {
        if (trim(line).empty())
            continue;
        for (const ClassifierRule& rule : rules_)
            if (std::regex_search(line, rule.compiled))
                return rule.category;
    }
    return ErrorCategory::other_compile_error;
}

std::map<ErrorCategory, int64_t> RuleTable::count_occurrences(std::string_view diagnostics) const {
    std::map<ErrorCategory, int64_t> counts;
    for (const std::string& line : split_lines(diagnostics)) {
        if (trim(line).empty())
            continue;
        for (const ClassifierRule& rule : rules_)
            if (std::regex_search(line, rule.compiled)) {
                ++counts[rule.category];
                break;
            }
    }
    return counts;
}

std::string classification_evidence(std::string_view diagnostics, const RuleTable& rules) {
    for (const std::string& line : split_lines(diagnostics)) {
        if (trim(line).empty())
            continue;
        for (const ClassifierRule& rule : rules.rules())
            if (std::regex_search(line, rule.compiled))
                return std::string(trim(line));
    }
    return first_nonempty_line(diagnostics);
}

ErrorCategory classify_exec_failure(const ExecOutcome& exec, const ComparisonReport& comparison) {
    if (exec.kind == ExitKind::signaled) {
        if (exec.signal_name == "SIGSEGV")
            return ErrorCategory::segmentation_fault;
        if (exec.signal_name == "SIGILL")
            return ErrorCategory::illegal_instruction;
        return ErrorCategory::other_exec_error;
    }
    if (exec.kind == ExitKind::timed_out)
        return ErrorCategory::other_exec_error;
    if (exec.exit_code == 0 && !comparison.matched)
        return ErrorCategory::wrong_result;
    return ErrorCategory::other_exec_error;
}

Verdict judge(const BuildOutcome& build, const std::optional<ExecOutcome>& exec,
              std::string_view expected_output, double tolerance, const RuleTable& rules) {
    if (build.succeeded != exec.has_value())
        raise(errc::inconsistent_input,
              build.succeeded ? "build succeeded but no exec outcome supplied"
                              : "exec outcome supplied for a failed build");

    Verdict verdict;
    if (!build.succeeded) {
        verdict.kind = VerdictKind::compile_error;
        verdict.category = rules.classify_build_failure(build.diagnostics);
        verdict.evidence = classification_evidence(build.diagnostics, rules);
        return verdict;
    }

    ComparisonReport comparison;
    if (exec->kind == ExitKind::exited && exec->exit_code == 0)
        comparison = compare_outputs(exec->stdout_text, expected_output, tolerance);

    if (exec->kind == ExitKind::exited && exec->exit_code == 0 && comparison.matched) {
        verdict.kind = VerdictKind::success;
        return verdict;
    }

    verdict.kind = VerdictKind::exec_error;
    verdict.category = classify_exec_failure(*exec, comparison);
    if (verdict.category == ErrorCategory::wrong_result)
        verdict.evidence = comparison.detail();
    else
        verdict.evidence = exec->exit_description();
    return verdict;
}

} // namespace ceval
