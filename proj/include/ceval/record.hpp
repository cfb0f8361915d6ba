#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ceval/pipeline.hpp"
#include "ceval/verdict.hpp"

#include "json.hpp"

namespace ceval {

// Flattened, path-free build/exec summaries persisted with each sample.
struct BuildSummary {
    bool succeeded = false;
    std::string stage = "assemble";
    std::string diagnostics; // truncated to diagnostics_cap()
    int64_t duration_ms = 0;
};

struct ExecSummary {
    std::string exit_kind = "exited"; // exited | signaled | timed_out
    int exit_code = -1;
    std::string signal_name;
    std::string stdout_digest;
    bool stdout_truncated = false;
    bool matched = false;              // comparison against the reference output
    bool token_count_mismatch = false;
    int64_t actual_tokens = 0;
    int64_t expected_tokens = 0;
    int64_t first_mismatch_index = -1; // -1 when matched or counts differ
    std::string expected_token;
    std::string actual_token;
    int64_t duration_ms = 0;
};

std::size_t diagnostics_cap();

BuildSummary summarize(const BuildOutcome& outcome);
ExecSummary summarize(const ExecOutcome& outcome, const ComparisonReport& comparison);

struct SampleRecord {
    std::string run_id;
    std::string case_id;
    std::string arch;
    std::string model_name;
    std::string prompt_version;
    int sample_index = 0;
    int feedback_round = 0; // attempt that produced this record (0 = first shot)
    std::string request_digest;
    std::string raw_response_digest;
    std::string extraction_method;
    BuildSummary build;
    std::optional<ExecSummary> exec;
    Verdict verdict;
    int64_t timestamp_ms = 0;
};

nlohmann::json to_json(const SampleRecord& record);
SampleRecord record_from_json(const nlohmann::json& value); // raises store_parse

// Zeroes the wall-clock fields (timestamp, build/exec durations).
void canonicalize(SampleRecord& record);

} // namespace ceval
