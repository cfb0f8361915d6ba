#include "ceval/runstore.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "ceval/errors.hpp"
#include "ceval/util.hpp"

namespace ceval {

RunStore RunStore::create(const std::filesystem::path& run_dir) {
    std::error_code ec;
    std::filesystem::create_directories(run_dir, ec);
    if (ec)
        raise(errc::store_write, run_dir.string() + ": " + ec.message());

    RunStore store;
    store.dir_ = run_dir;
    std::filesystem::path records = run_dir / "records.jsonl";
    store.out_.open(records, std::ios::binary | std::ios::trunc);
    if (!store.out_)
        raise(errc::store_write, "cannot open " + records.string());
    return store;
}

std::vector<SampleRecord> RunStore::load_records(const std::filesystem::path& run_dir) {
    std::filesystem::path file = run_dir;
    if (std::filesystem::is_directory(run_dir))
        file = run_dir / "records.jsonl";
    std::string text = read_file(file);

    std::vector<SampleRecord> records;
    std::size_t lineno = 0;
    for (const std::string& line : split_lines(text)) {
        ++lineno;
        if (trim(line).empty())
            continue;
        nlohmann::json doc = nlohmann::json::parse(line, nullptr, false);
        if (doc.is_discarded())
            raise(errc::store_parse, file.string() + ":" + std::to_string(lineno) + ": not JSON");
        records.push_back(record_from_json(doc));
    }
    return records;
}

void RunStore::append_record(const SampleRecord& record) {
    auto key = std::make_tuple(record.run_id, record.case_id, record.sample_index);
    if (!seen_.insert(key).second)
        raise(errc::duplicate_sample, "duplicate sample (" + record.run_id + ", " +
                                          record.case_id + ", " +
                                          std::to_string(record.sample_index) + ")");
    out_ << to_json(record).dump() << '\n';
    out_.flush();
    if (!out_)
        raise(errc::store_write, "append failed under " + dir_.string());
}

std::vector<HistogramRow> error_histogram(std::span<const SampleRecord> records,
                                          const RuleTable& rules) {
    std::map<ErrorCategory, HistogramRow> rows;
    for (ErrorCategory category : category_table_order())
        rows[category] = HistogramRow{category, 0, 0};

    for (const SampleRecord& record : records) {
        if (record.verdict.kind == VerdictKind::success)
            continue;
        if (record.verdict.category)
            ++rows[*record.verdict.category].per_sample;

        if (record.verdict.kind == VerdictKind::compile_error) {
            for (const auto& [category, count] : rules.count_occurrences(record.build.diagnostics))
                rows[category].per_occurrence += count;
        } else if (record.verdict.category) {
            ++rows[*record.verdict.category].per_occurrence;
        }
    }

    std::vector<HistogramRow> out;
    for (ErrorCategory category : category_table_order())
        out.push_back(rows[category]);
    return out;
}

std::string histogram_csv(const std::vector<HistogramRow>& rows) {
    std::string csv = "category,per_sample,per_occurrence\n";
    for (const HistogramRow& row : rows) {
        csv += category_name(row.category);
        csv += ',' + std::to_string(row.per_sample) + ',' + std::to_string(row.per_occurrence) +
               '\n';
    }
    return csv;
}

std::string histogram_table(const std::vector<HistogramRow>& rows) {
    std::size_t width = 0;
    for (const HistogramRow& row : rows)
        width = std::max(width, category_display(row.category).size());
    std::string out;
    for (const HistogramRow& row : rows) {
        std::string name(category_display(row.category));
        name.resize(width, ' ');
        out += name + "  " + std::to_string(row.per_sample) + " sample(s), " +
               std::to_string(row.per_occurrence) + " occurrence(s)\n";
    }
    return out;
}

namespace {

std::string rate_cell(const std::optional<double>& rate) {
    return rate ? format_fixed(*rate, 4) : "null";
}

} // namespace

std::string summary_csv(const std::vector<MetricsSummary>& summaries) {
    std::string csv = "group,n_total,n_exec,n_succ,success_at_1,exec_corr_rate\n";
    for (const MetricsSummary& s : summaries) {
        csv += s.group_key.render();
        csv += ',' + std::to_string(s.n_total) + ',' + std::to_string(s.n_exec) + ',' +
               std::to_string(s.n_succ) + ',' + format_fixed(s.success_at_1, 4) + ',' +
               rate_cell(s.exec_corr_rate) + '\n';
    }
    return csv;
}

std::string summary_table(const std::vector<MetricsSummary>& summaries) {
    std::vector<std::array<std::string, 6>> cells;
    cells.push_back({"group", "n_total", "n_exec", "n_succ", "success@1", "R_exec_corr"});
    for (const MetricsSummary& s : summaries)
        cells.push_back({s.group_key.render(), std::to_string(s.n_total),
                         std::to_string(s.n_exec), std::to_string(s.n_succ),
                         format_fixed(s.success_at_1, 4), rate_cell(s.exec_corr_rate)});

    std::array<std::size_t, 6> widths{};
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());

    std::string out;
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::string cell = row[i];
            cell.resize(widths[i], ' ');
            out += cell;
            out += i + 1 < row.size() ? "  " : "";
        }
        while (!out.empty() && out.back() == ' ')
            out.pop_back();
        out += '\n';
    }
    return out;
}

std::string scatter_csv(std::span<const SampleRecord> records) {
    struct Counts {
        int64_t n_exec = 0, n_succ = 0;
    };
    std::map<std::pair<std::string, std::string>, Counts> groups;
    for (const SampleRecord& record : records) {
        Counts& c = groups[{record.case_id, record.arch}];
        if (record.verdict.kind != VerdictKind::compile_error)
            ++c.n_exec;
        if (record.verdict.kind == VerdictKind::success)
            ++c.n_succ;
    }
    std::string csv = "case,arch,n_exec,exec_corr_rate\n";
    for (const auto& [key, counts] : groups) {
        csv += key.first + ',' + key.second + ',' + std::to_string(counts.n_exec) + ',' +
               rate_cell(exec_corr_rate(counts.n_succ, counts.n_exec)) + '\n';
    }
    return csv;
}

Verdict reclassify(const SampleRecord& record, const RuleTable& rules) {
    Verdict verdict;
    if (!record.build.succeeded) {
        verdict.kind = VerdictKind::compile_error;
        verdict.category = rules.classify_build_failure(record.build.diagnostics);
        verdict.evidence = classification_evidence(record.build.diagnostics, rules);
        return verdict;
    }

    if (!record.exec)
        raise(errc::inconsistent_input,
              "record " + record.case_id + "#" + std::to_string(record.sample_index) +
                  " has a successful build but no exec summary");

    const ExecSummary& exec = *record.exec;
    if (exec.exit_kind == "exited" && exec.exit_code == 0 && exec.matched) {
        verdict.kind = VerdictKind::success;
        return verdict;
    }

    // Rebuild the judge-time ComparisonReport so evidence strings come out
    // byte-identical.
    ComparisonReport comparison;
    comparison.matched = exec.matched;
    comparison.token_count_mismatch = exec.token_count_mismatch;
    comparison.actual_tokens = static_cast<std::size_t>(exec.actual_tokens);
    comparison.expected_tokens = static_cast<std::size_t>(exec.expected_tokens);
    if (exec.first_mismatch_index >= 0)
        comparison.first_mismatch_index = static_cast<std::size_t>(exec.first_mismatch_index);
    comparison.expected_token = exec.expected_token;
    comparison.actual_token = exec.actual_token;

    verdict.kind = VerdictKind::exec_error;
    if (exec.exit_kind == "signaled" && exec.signal_name == "SIGSEGV") {
        verdict.category = ErrorCategory::segmentation_fault;
        verdict.evidence = "signaled(" + exec.signal_name + ")";
    } else if (exec.exit_kind == "signaled" && exec.signal_name == "SIGILL") {
        verdict.category = ErrorCategory::illegal_instruction;
        verdict.evidence = "signaled(" + exec.signal_name + ")";
    } else if (exec.exit_kind == "exited" && exec.exit_code == 0) {
        verdict.category = ErrorCategory::wrong_result;
        verdict.evidence = comparison.detail();
    } else {
        verdict.category = ErrorCategory::other_exec_error;
        if (exec.exit_kind == "timed_out")
            verdict.evidence = "timed_out";
        else if (exec.exit_kind == "signaled")
            verdict.evidence = "signaled(" + exec.signal_name + ")";
        else
            verdict.evidence = "exited(" + std::to_string(exec.exit_code) + ")";
    }
    return verdict;
}

} // namespace ceval
