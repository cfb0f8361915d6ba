#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ceval/arch.hpp"
#include "ceval/pipeline.hpp"
#include "ceval/provider.hpp"
#include "ceval/verdict.hpp"

namespace ceval {

// Declarative experiment config. Relative paths are resolved against the
// manifest file's directory at load time; the original bytes are kept so
// the run directory stores the manifest verbatim.
struct RunManifest {
    std::string run_id;
    std::string corpus_root;
    ProviderConfig provider;
    Arch arch = Arch::x86_64;
    ToolchainSpec toolchain;
    int samples_per_case = 10;
    std::string prompt_version = "v1";
    std::string prompt_root = "assets/prompts";
    std::string rules_path = "assets/rules/diagnostic_rules.tsv";
    std::set<ErrorCategory> hint_categories;
    int feedback_rounds = 0;
    long long seed = 0;
    SpliceMode splice_mode = SpliceMode::single_unit;
    bool canonical_timestamps = false;
    std::string workdir = "work";
    std::vector<std::string> case_filter; // empty = whole corpus

    std::string raw_text;

    static RunManifest load(const std::filesystem::path& path);
    static RunManifest parse(std::string_view text, const std::filesystem::path& base_dir,
                             std::string_view origin);
    std::string serialize() const;
    void save(const std::filesystem::path& path) const;
};

} // namespace ceval
