#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ceval {

struct ToolchainSpec; // pipeline.hpp

struct TestCase {
    std::string id;
    std::string domain_tag; // linear-algebra | intelligent-computing | image-processing | audio-processing
    std::string kernel_source;
    std::string main_source;
    std::string kernel_symbol;
    double tolerance = 1e-4; // max absolute difference per printed numeric token
    int timeout_ms = 10000;
    std::string content_digest; // sha256 over kernel.c, main.c, case.txt bytes
};

struct Corpus {
    std::vector<TestCase> cases; // canonical dataset order
    std::string root_path;

    const TestCase* find(std::string_view id) const;
};

// The canonical 20-case order the shipped corpus follows.
std::span<const std::string_view> canonical_case_order();

// Loads <root>/<case-id>/{kernel.c, main.c, case.txt}. Cases appear in
// canonical order; ids outside the canonical list sort alphabetically after.
Corpus load_corpus(const std::filesystem::path& root);

struct CompilerCheck {
    std::string compiler; // "gcc" | "clang"
    bool compiled = false;
    bool executed = false;
    bool deterministic = true; // two consecutive runs byte-identical
    std::string output_digest;
    std::string output;
    std::string diagnostics;
};

struct ValidationReport {
    std::string case_id;
    std::vector<CompilerCheck> checks;
    bool kernel_standalone = true; // kernel.c compiles alone
    bool main_standalone = true;   // main.c compiles alone
    bool cross_agreement = true;   // gcc vs clang output within tolerance
    std::string detail;            // first failure, human-readable

    bool ok() const;
};

// Builds and runs the case with every configured reference compiler and
// cross-checks outputs. Failures are embedded in the report; only a missing
// toolchain raises.
ValidationReport validate_case(const TestCase& test_case, const ToolchainSpec& toolchain);

} // namespace ceval
