#include "ceval/prompting.hpp"

#include <algorithm>

#include "ceval/errors.hpp"
#include "ceval/util.hpp"

namespace ceval {

namespace {

void replace_all(std::string& text, std::string_view placeholder, std::string_view value) {
    std::size_t pos = 0;
    while ((pos = text.find(placeholder, pos)) != std::string::npos) {
        text.replace(pos, placeholder.size(), value);
        pos += value.size();
    }
}

} // namespace

std::string PromptLibrary::hint_slug(ErrorCategory category) {
    std::string slug;
    for (char c : category_display(category)) {
        if (c == ' ')
            slug += '-';
        else
            slug += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return slug;
}

PromptLibrary::PromptLibrary(std::filesystem::path root, std::string version)
    : version_(std::move(version)) {
    std::filesystem::path base = root / version_;
    base_ = read_file(base / "base.txt");
    for (ErrorCategory category : category_table_order()) {
        if (category == ErrorCategory::other_compile_error ||
            category == ErrorCategory::other_exec_error)
            continue;
        hints_[category] = read_file(base / "hints" / (hint_slug(category) + ".txt"));
    }
}

const std::string& PromptLibrary::hint_text(ErrorCategory category) const {
    auto it = hints_.find(category);
    if (it == hints_.end())
        raise(errc::missing_file,
              "no hint text for category " + std::string(category_name(category)));
    return it->second;
}

std::string PromptSpec::render() const {
    std::string out = base_instruction;
    replace_all(out, "{{arch}}", arch_name(target_arch));
    replace_all(out, "{{kernel_symbol}}", kernel_symbol);
    replace_all(out, "{{abi_notes}}", abi_notes);
    replace_all(out, "{{kernel_source}}", kernel_source);

    if (!augmentations.empty()) {
        out += "\nAdditional requirements:\n";
        for (const HintBlock& hint : augmentations) {
            out += "- [";
            out += category_display(hint.category);
            out += "] ";
            out += std::string(trim(hint.hint_text));
            out += '\n';
        }
    }
    if (!feedback.empty()) {
        out += '\n';
        for (const std::string& line : feedback) {
            out += line;
            out += '\n';
        }
    }
    return out;
}

PromptSpec build_base_prompt(const TestCase& test_case, Arch arch, const PromptLibrary& library) {
    PromptSpec spec;
    spec.base_instruction = library.base_template();
    spec.target_arch = arch;
    spec.abi_notes = std::string(ceval::abi_notes(arch));
    spec.case_id = test_case.id;
    spec.kernel_symbol = test_case.kernel_symbol;
    spec.kernel_source = test_case.kernel_source;
    spec.prompt_version = library.version();
    return spec;
}

PromptSpec augment_with_hints(PromptSpec spec, const std::set<ErrorCategory>& categories,
                              const PromptLibrary& library) {
    for (ErrorCategory category : category_table_order()) {
        if (!categories.count(category))
            continue;
        if (category == ErrorCategory::other_compile_error ||
            category == ErrorCategory::other_exec_error)
            continue;
        bool present = std::any_of(spec.augmentations.begin(), spec.augmentations.end(),
                                   [&](const HintBlock& h) { return h.category == category; });
        if (!present)
            spec.augmentations.push_back({category, library.hint_text(category)});
    }
    std::stable_sort(spec.augmentations.begin(), spec.augmentations.end(),
                     [](const HintBlock& a, const HintBlock& b) {
                         auto order = category_table_order();
                         auto pos = [&](ErrorCategory c) {
                             return std::find(order.begin(), order.end(), c) - order.begin();
                         };
                         return pos(a.category) < pos(b.category);
                     });
    return spec;
}

PromptSpec build_feedback_prompt(PromptSpec spec, const FeedbackSource& prior, int max_diag_lines,
                                 std::size_t max_asm_bytes) {
    if (prior.verdict.kind == VerdictKind::success)
        raise(errc::feedback_on_success, "prior attempt already succeeded");

    std::vector<std::string> section;
    section.push_back("Your previous attempt failed.");
    std::string label = std::string(verdict_kind_name(prior.verdict.kind));
    if (prior.verdict.category)
        label += "/" + std::string(category_name(*prior.verdict.category));
    section.push_back("Failure: " + label);
    if (!prior.verdict.evidence.empty())
        section.push_back("Evidence: " + prior.verdict.evidence);

    std::vector<std::string> diag_lines;
    for (const std::string& line : split_lines(prior.diagnostics)) {
        if (trim(line).empty())
            continue;
        diag_lines.push_back(line);
        if (static_cast<int>(diag_lines.size()) >= max_diag_lines)
            break;
    }
    if (!diag_lines.empty()) {
        section.push_back("Diagnostics:");
        for (std::string& line : diag_lines)
            section.push_back("  " + line);
    }

    if (!prior.assembly_text.empty()) {
        section.push_back("Previous assembly (may be truncated):");
        section.push_back("```asm");
        std::string asm_text = truncate_lines(prior.assembly_text, max_asm_bytes);
        for (const std::string& line : split_lines(asm_text))
            section.push_back(line);
        section.push_back("```");
    }
    section.push_back("Fix the error named above and output the complete corrected assembly, "
                      "again as a single ```asm code block.");

    spec.feedback = std::move(section);
    return spec;
}

} // namespace ceval
