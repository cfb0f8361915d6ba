#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "ceval/metrics.hpp"
#include "ceval/record.hpp"
#include "ceval/verdict.hpp"

namespace ceval {

// Append-only line-delimited record log under <run-dir>/records.jsonl.
// Single writer per run; readers load completed runs.
class RunStore {
public:
    static RunStore create(const std::filesystem::path& run_dir);
    static std::vector<SampleRecord> load_records(const std::filesystem::path& run_dir);

    // Serializes, appends one line, flushes. Duplicate (run, case, index) raises.
    void append_record(const SampleRecord& record);

    const std::filesystem::path& dir() const { return dir_; }
    std::size_t count() const { return seen_.size(); }

private:
    RunStore() = default;
    std::filesystem::path dir_;
    std::ofstream out_;
    std::set<std::tuple<std::string, std::string, int>> seen_;
};

struct HistogramRow {
    ErrorCategory category;
    int64_t per_sample = 0;     // failed samples whose primary category this is
    int64_t per_occurrence = 0; // every matching diagnostic line across failed samples
};

// Canonical taxonomy order, Other buckets last.
std::vector<HistogramRow> error_histogram(std::span<const SampleRecord> records,
                                          const RuleTable& rules);

std::string histogram_csv(const std::vector<HistogramRow>& rows);
std::string histogram_table(const std::vector<HistogramRow>& rows);

// Header: group,n_total,n_exec,n_succ,success_at_1,exec_corr_rate.
// Rates rendered with 4 decimals; undefined rates render as null.
std::string summary_csv(const std::vector<MetricsSummary>& summaries);
std::string summary_table(const std::vector<MetricsSummary>& summaries);

// One row per (case, arch), sorted: case,arch,n_exec,exec_corr_rate.
std::string scatter_csv(std::span<const SampleRecord> records);

// Recomputes the verdict from the stored build/exec evidence; bit-for-bit
// equal to the stored verdict for an untouched store.
Verdict reclassify(const SampleRecord& record, const RuleTable& rules);

} // namespace ceval
