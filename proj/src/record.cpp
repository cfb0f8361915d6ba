#include "ceval/record.hpp"

#include "ceval/errors.hpp"
#include "ceval/util.hpp"

namespace ceval {

std::size_t diagnostics_cap() { return 8192; }

BuildSummary summarize(const BuildOutcome& outcome) {
    BuildSummary s;
    s.succeeded = outcome.succeeded;
    s.stage = std::string(build_stage_name(outcome.stage));
    s.diagnostics = truncate_lines(outcome.diagnostics, diagnostics_cap());
    s.duration_ms = outcome.duration_ms;
    return s;
}

ExecSummary summarize(const ExecOutcome& outcome, const ComparisonReport& comparison) {
    ExecSummary s;
    switch (outcome.kind) {
    case ExitKind::exited: s.exit_kind = "exited"; break;
    case ExitKind::signaled: s.exit_kind = "signaled"; break;
    case ExitKind::timed_out: s.exit_kind = "timed_out"; break;
    }
    s.exit_code = outcome.exit_code;
    s.signal_name = outcome.signal_name;
    s.stdout_truncated = outcome.stdout_truncated;
    s.duration_ms = outcome.duration_ms;
    s.matched = comparison.matched;
    s.token_count_mismatch = comparison.token_count_mismatch;
    s.actual_tokens = static_cast<int64_t>(comparison.actual_tokens);
    s.expected_tokens = static_cast<int64_t>(comparison.expected_tokens);
    if (!comparison.matched && !comparison.token_count_mismatch) {
        s.first_mismatch_index = static_cast<int64_t>(comparison.first_mismatch_index);
        s.expected_token = comparison.expected_token;
        s.actual_token = comparison.actual_token;
    }
    return s;
}

nlohmann::json to_json(const SampleRecord& record) {
    nlohmann::json build = {
        {"succeeded", record.build.succeeded},
        {"stage", record.build.stage},
        {"diagnostics", record.build.diagnostics},
        {"duration_ms", record.build.duration_ms},
    };
    nlohmann::json exec = nullptr;
    if (record.exec) {
        exec = {
            {"exit_kind", record.exec->exit_kind},
            {"exit_code", record.exec->exit_code},
            {"signal", record.exec->signal_name},
            {"stdout_digest", record.exec->stdout_digest},
            {"stdout_truncated", record.exec->stdout_truncated},
            {"matched", record.exec->matched},
            {"token_count_mismatch", record.exec->token_count_mismatch},
            {"actual_tokens", record.exec->actual_tokens},
            {"expected_tokens", record.exec->expected_tokens},
            {"first_mismatch_index", record.exec->first_mismatch_index},
            {"expected_token", record.exec->expected_token},
            {"actual_token", record.exec->actual_token},
            {"duration_ms", record.exec->duration_ms},
        };
    }
    nlohmann::json verdict = {
        {"kind", verdict_kind_name(record.verdict.kind)},
        {"category", record.verdict.category
                         ? nlohmann::json(std::string(category_name(*record.verdict.category)))
                         : nlohmann::json(nullptr)},
        {"evidence", record.verdict.evidence},
    };
    return nlohmann::json{
        {"run_id", record.run_id},
        {"case_id", record.case_id},
        {"arch", record.arch},
        {"model_name", record.model_name},
        {"prompt_version", record.prompt_version},
        {"sample_index", record.sample_index},
        {"feedback_round", record.feedback_round},
        {"request_digest", record.request_digest},
        {"raw_response_digest", record.raw_response_digest},
        {"extraction_method", record.extraction_method},
        {"build", build},
        {"exec", exec},
        {"verdict", verdict},
        {"timestamp_ms", record.timestamp_ms},
    };
}

SampleRecord record_from_json(const nlohmann::json& value) {
    try {
        SampleRecord record;
        record.run_id = value.at("run_id").get<std::string>();
        record.case_id = value.at("case_id").get<std::string>();
        record.arch = value.at("arch").get<std::string>();
        record.model_name = value.at("model_name").get<std::string>();
        record.prompt_version = value.at("prompt_version").get<std::string>();
        record.sample_index = value.at("sample_index").get<int>();
        record.feedback_round = value.at("feedback_round").get<int>();
        record.request_digest = value.at("request_digest").get<std::string>();
        record.raw_response_digest = value.at("raw_response_digest").get<std::string>();
        record.extraction_method = value.at("extraction_method").get<std::string>();

        const nlohmann::json& build = value.at("build");
        record.build.succeeded = build.at("succeeded").get<bool>();
        record.build.stage = build.at("stage").get<std::string>();
        record.build.diagnostics = build.at("diagnostics").get<std::string>();
        record.build.duration_ms = build.at("duration_ms").get<int64_t>();

        const nlohmann::json& exec = value.at("exec");
        if (!exec.is_null()) {
            ExecSummary s;
            s.exit_kind = exec.at("exit_kind").get<std::string>();
            s.exit_code = exec.at("exit_code").get<int>();
            s.signal_name = exec.at("signal").get<std::string>();
            s.stdout_digest = exec.at("stdout_digest").get<std::string>();
            s.stdout_truncated = exec.at("stdout_truncated").get<bool>();
            s.matched = exec.at("matched").get<bool>();
            s.token_count_mismatch = exec.at("token_count_mismatch").get<bool>();
            s.actual_tokens = exec.at("actual_tokens").get<int64_t>();
            s.expected_tokens = exec.at("expected_tokens").get<int64_t>();
            s.first_mismatch_index = exec.at("first_mismatch_index").get<int64_t>();
            s.expected_token = exec.at("expected_token").get<std::string>();
            s.actual_token = exec.at("actual_token").get<std::string>();
            s.duration_ms = exec.at("duration_ms").get<int64_t>();
            record.exec = std::move(s);
        }

        const nlohmann::json& verdict = value.at("verdict");
        record.verdict.kind = parse_verdict_kind(verdict.at("kind").get<std::string>());
        if (!verdict.at("category").is_null())
            record.verdict.category = parse_category(verdict.at("category").get<std::string>());
        record.verdict.evidence = verdict.at("evidence").get<std::string>();

        record.timestamp_ms = value.at("timestamp_ms").get<int64_t>();
        return record;
    } catch (const nlohmann::json::exception& e) {
        raise(errc::store_parse, std::string("malformed record: ") + e.what());
    }
}

void canonicalize(SampleRecord& record) {
    record.timestamp_ms = 0;
    record.build.duration_ms = 0;
    if (record.exec)
        record.exec->duration_ms = 0;
}

} // namespace ceval
