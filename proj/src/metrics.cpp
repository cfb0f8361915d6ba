#include "ceval/metrics.hpp"

#include <algorithm>
#include <map>

#include "ceval/errors.hpp"
#include "ceval/util.hpp"

namespace ceval {

std::string GroupKey::render() const {
    std::vector<std::string> parts;
    if (case_id)
        parts.push_back("case=" + *case_id);
    if (model)
        parts.push_back("model=" + *model);
    if (arch)
        parts.push_back("arch=" + *arch);
    if (prompt_version)
        parts.push_back("prompt=" + *prompt_version);
    return parts.empty() ? "overall" : join(parts, ";");
}

bool GroupKey::same_shape(const GroupKey& other) const {
    return case_id.has_value() == other.case_id.has_value() &&
           model.has_value() == other.model.has_value() &&
           arch.has_value() == other.arch.has_value() &&
           prompt_version.has_value() == other.prompt_version.has_value();
}

double success_at_1(int64_t n_succ, int64_t n_total) {
    if (n_total < 1 || n_succ < 0 || n_succ > n_total)
        raise(errc::domain_error, "success_at_1 needs 0 <= n_succ <= n_total, n_total >= 1 (got " +
                                      std::to_string(n_succ) + "/" + std::to_string(n_total) + ")");
    // 1 - C(n_total - n_succ, 1) / C(n_total, 1), with C(m, 1) = m.
    double failing_choose_1 = static_cast<double>(n_total - n_succ);
    double total_choose_1 = static_cast<double>(n_total);
    return 1.0 - failing_choose_1 / total_choose_1;
}

double success_at_1_ratio(int64_t n_succ, int64_t n_total) {
    if (n_total < 1 || n_succ < 0 || n_succ > n_total)
        raise(errc::domain_error, "success_at_1_ratio domain violation");
    return static_cast<double>(n_succ) / static_cast<double>(n_total);
}

std::optional<double> exec_corr_rate(int64_t n_succ, int64_t n_exec) {
    if (n_succ < 0 || n_succ > n_exec)
        raise(errc::domain_error, "exec_corr_rate needs 0 <= n_succ <= n_exec (got " +
                                      std::to_string(n_succ) + "/" + std::to_string(n_exec) + ")");
    if (n_exec == 0)
        return std::nullopt;
    return static_cast<double>(n_succ) / static_cast<double>(n_exec);
}

GroupBy GroupBy::parse(std::string_view csv) {
    GroupBy gb;
    for (const std::string& raw : split(csv, ',')) {
        std::string key = to_lower(trim(raw));
        if (key.empty())
            continue;
        if (key == "case")
            gb.by_case = true;
        else if (key == "model")
            gb.by_model = true;
        else if (key == "arch")
            gb.by_arch = true;
        else if (key == "prompt")
            gb.by_prompt = true;
        else
            raise(errc::domain_error, "unknown group-by key \"" + key +
                                          "\" (known: case, model, arch, prompt)");
    }
    return gb;
}

MetricsSummary summarize_counts(int64_t n_total, int64_t n_exec, int64_t n_succ, GroupKey key) {
    if (n_succ > n_exec || n_exec > n_total)
        raise(errc::domain_error, "counts must satisfy n_succ <= n_exec <= n_total");
    MetricsSummary summary;
    summary.n_total = n_total;
    summary.n_exec = n_exec;
    summary.n_succ = n_succ;
    summary.success_at_1 = n_total > 0 ? success_at_1(n_succ, n_total) : 0.0;
    summary.exec_corr_rate = exec_corr_rate(n_succ, n_exec);
    summary.group_key = std::move(key);
    return summary;
}

std::vector<MetricsSummary> aggregate(std::span<const SampleRecord> records,
                                      const GroupBy& group_by) {
    struct Counts {
        int64_t n_total = 0, n_exec = 0, n_succ = 0;
    };
    std::map<GroupKey, Counts> groups;
    for (const SampleRecord& record : records) {
        GroupKey key;
        if (group_by.by_case)
            key.case_id = record.case_id;
        if (group_by.by_model)
            key.model = record.model_name;
        if (group_by.by_arch)
            key.arch = record.arch;
        if (group_by.by_prompt)
            key.prompt_version = record.prompt_version;

        Counts& c = groups[key];
        ++c.n_total;
        if (record.verdict.kind != VerdictKind::compile_error)
            ++c.n_exec; // Success or ExecError: the sample assembled and linked
        if (record.verdict.kind == VerdictKind::success)
            ++c.n_succ;
    }

    std::vector<MetricsSummary> out;
    out.reserve(groups.size());
    for (auto& [key, counts] : groups)
        out.push_back(summarize_counts(counts.n_total, counts.n_exec, counts.n_succ, key));
    return out;
}

double delta_pp(const MetricsSummary& a, const MetricsSummary& b) {
    if (!a.group_key.same_shape(b.group_key))
        raise(errc::key_mismatch, "summaries group over different dimensions: \"" +
                                      a.group_key.render() + "\" vs \"" + b.group_key.render() +
                                      "\"");
    return (b.success_at_1 - a.success_at_1) * 100.0;
}

} // namespace ceval
