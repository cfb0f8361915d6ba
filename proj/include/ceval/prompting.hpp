#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ceval/arch.hpp"
#include "ceval/corpus.hpp"
#include "ceval/verdict.hpp"

namespace ceval {

struct HintBlock {
    ErrorCategory category;
    std::string hint_text;
};

struct PromptSpec {
    std::string base_instruction; // versioned template with {{placeholder}} slots
    Arch target_arch = Arch::x86_64;
    std::string abi_notes;
    std::vector<HintBlock> augmentations; // canonical taxonomy order
    std::vector<std::string> feedback;    // rendered feedback lines, at most one section

    std::string case_id;
    std::string kernel_symbol;
    std::string kernel_source;
    std::string prompt_version;

    // Pure rendering of the fields; byte-identical for identical specs.
    std::string render() const;
};

// Versioned prompt assets: <root>/<version>/base.txt and
// <root>/<version>/hints/<category-slug>.txt (nine canonical categories).
class PromptLibrary {
public:
    PromptLibrary(std::filesystem::path root, std::string version);

    const std::string& base_template() const { return base_; }
    const std::string& hint_text(ErrorCategory category) const;
    const std::string& version() const { return version_; }

    static std::string hint_slug(ErrorCategory category); // "instruction-error"

private:
    std::string version_;
    std::string base_;
    std::map<ErrorCategory, std::string> hints_;
};

PromptSpec build_base_prompt(const TestCase& test_case, Arch arch, const PromptLibrary& library);

// Appends one HintBlock per requested category in canonical taxonomy order;
// already-present categories are not duplicated. Empty set is the identity.
PromptSpec augment_with_hints(PromptSpec spec, const std::set<ErrorCategory>& categories,
                              const PromptLibrary& library);

struct FeedbackSource {
    Verdict verdict;
    std::string diagnostics;    // build stderr or exec evidence
    std::string assembly_text;  // the prior attempt's assembly
};

// Quotes the prior failure (first max_diag_lines diagnostic lines, assembly
// truncated to max_asm_bytes) and asks for a fix. Raises feedback_on_success
// when the prior verdict is Success.
PromptSpec build_feedback_prompt(PromptSpec spec, const FeedbackSource& prior,
                                 int max_diag_lines = 20, std::size_t max_asm_bytes = 4096);

} // namespace ceval
