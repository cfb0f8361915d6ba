#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ceval/corpus.hpp"
#include "ceval/manifest.hpp"
#include "ceval/metrics.hpp"
#include "ceval/pipeline.hpp"

namespace ceval {

struct RunOptions {
    int jobs = 0;              // 0 = logical CPU count
    bool keep_scratch = false; // retain scratch dirs for forensics
    std::string archive_dir;   // overrides manifest provider.archive_dir
    std::filesystem::path out_root = "runs";
    bool canonical = false;    // OR-ed with manifest canonical_timestamps
};

struct RunOutcome {
    std::filesystem::path run_dir;
    std::vector<MetricsSummary> per_case;
    MetricsSummary overall;
    std::size_t record_count = 0;
};

// The full loop: prompt -> generate -> extract -> splice -> build -> execute
// -> judge -> record, fanned out over a bounded worker pool with records
// funneled through one ordered writer. Individual sample failures are data;
// infrastructure failures raise.
RunOutcome run_experiment(const RunManifest& manifest, const RunOptions& options);

struct SmokeCaseResult {
    std::string case_id;
    bool pass = false;
    std::string detail;
};

struct SmokeResult {
    std::vector<SmokeCaseResult> cases;
    bool all_pass() const;
};

// Round-trip soundness self-test: the reference compiler's own kernel
// assembly through splice -> build -> execute -> judge must be Success for
// every case.
SmokeResult run_smoke(const Corpus& corpus, const ToolchainSpec& toolchain,
                      const std::filesystem::path& workdir, const RuleTable& rules,
                      SpliceMode mode = SpliceMode::single_unit);

} // namespace ceval
