#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ceval/record.hpp"

namespace ceval {

struct GroupKey {
    std::optional<std::string> case_id;
    std::optional<std::string> model;
    std::optional<std::string> arch;
    std::optional<std::string> prompt_version;

    auto operator<=>(const GroupKey&) const = default;
    std::string render() const; // "overall" or "case=saxpy;arch=x86_64"
    bool same_shape(const GroupKey& other) const;
};

struct MetricsSummary {
    int64_t n_total = 0;
    int64_t n_exec = 0; // samples that assembled and linked
    int64_t n_succ = 0; // samples whose output matched the reference
    double success_at_1 = 0.0;
    std::optional<double> exec_corr_rate; // undefined when n_exec == 0
    GroupKey group_key;
};

// Compilation success rate in its binomial form,
// 1 - C(n_total - n_succ, 1) / C(n_total, 1). Raises domain_error outside
// 0 <= n_succ <= n_total, n_total >= 1.
double success_at_1(int64_t n_succ, int64_t n_total);
// The reduced form n_succ / n_total; the identity between the two is part
// of the test suite.
double success_at_1_ratio(int64_t n_succ, int64_t n_total);

// n_succ / n_exec; nullopt when n_exec == 0. Raises domain_error when
// n_succ > n_exec.
std::optional<double> exec_corr_rate(int64_t n_succ, int64_t n_exec);

struct GroupBy {
    bool by_case = false;
    bool by_model = false;
    bool by_arch = false;
    bool by_prompt = false;

    static GroupBy parse(std::string_view csv); // "case,arch"; raises domain_error on unknown keys
};

// Deterministic grouped counting: order-insensitive over records, groups
// sorted by key.
std::vector<MetricsSummary> aggregate(std::span<const SampleRecord> records,
                                      const GroupBy& group_by);

MetricsSummary summarize_counts(int64_t n_total, int64_t n_exec, int64_t n_succ, GroupKey key);

// (b - a) in percentage points of success@1. Raises key_mismatch when the
// two summaries group over different dimensions.
double delta_pp(const MetricsSummary& a, const MetricsSummary& b);

} // namespace ceval
