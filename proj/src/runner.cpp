#include "ceval/runner.hpp"

#include <atomic>
#include <condition_variable>
#include <exception>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

#include "ceval/digest.hpp"
#include "ceval/errors.hpp"
#include "ceval/prompting.hpp"
#include "ceval/provider.hpp"
#include "ceval/record.hpp"
#include "ceval/runstore.hpp"
#include "ceval/util.hpp"

namespace ceval {

namespace {

// Buffers out-of-order worker results and appends them in task order, so
// records.jsonl is byte-stable regardless of worker count.
class OrderedAppender {
public:
    explicit OrderedAppender(RunStore& store) : store_(store) {}

    void push(std::size_t index, SampleRecord record) {
        std::lock_guard lock(mutex_);
        pending_.emplace(index, std::move(record));
        while (true) {
            auto it = pending_.find(next_);
            if (it == pending_.end())
                break;
            store_.append_record(it->second);
            pending_.erase(it);
            ++next_;
        }
    }

private:
    RunStore& store_;
    std::mutex mutex_;
    std::map<std::size_t, SampleRecord> pending_;
    std::size_t next_ = 0;
};

struct CasePrep {
    const TestCase* test_case = nullptr;
    std::string template_text; // single-unit mode only
    std::string expected_output;
    PromptSpec base_spec;
};

BuildOutcome synthetic_failure(std::string reason) {
    BuildOutcome outcome;
    outcome.succeeded = false;
    outcome.stage = BuildStage::assemble;
    outcome.diagnostics = std::move(reason);
    return outcome;
}

struct SampleEnv {
    const RunManifest* manifest;
    Provider* provider;
    const RuleTable* rules;
    std::filesystem::path run_scratch;
    bool keep_scratch;
    bool record_archive; // write generations into the archive
    std::filesystem::path archive_dir;
    bool canonical;
};

SampleRecord evaluate_sample(const SampleEnv& env, const CasePrep& prep, int sample_index) {
    const RunManifest& m = *env.manifest;
    const TestCase& test_case = *prep.test_case;

    SampleRecord record;
    record.run_id = m.run_id;
    record.case_id = test_case.id;
    record.arch = std::string(arch_name(m.arch));
    record.model_name = m.provider.model_name;
    record.prompt_version = m.prompt_version;
    record.sample_index = sample_index;

    std::filesystem::path sample_dir = env.run_scratch / test_case.id / std::to_string(sample_index);

    PromptSpec spec = prep.base_spec;
    for (int round = 0;; ++round) {
        record.feedback_round = round;
        const std::string prompt_text = spec.render();

        GenerationResult generation =
            env.provider->generate({prompt_text, test_case.id, sample_index});
        record.request_digest = generation.request_digest;
        record.raw_response_digest = sha256_hex(generation.raw_text);

        if (env.record_archive) {
            RecordMeta meta{m.provider.model_name, m.provider.sampling_temperature, sample_index,
                            sha256_hex(prompt_text)};
            record_result(generation, meta, env.archive_dir);
        }

        std::filesystem::path scratch =
            round == 0 ? sample_dir : sample_dir / ("round-" + std::to_string(round));
        BuildContext context{scratch};

        AsmArtifact artifact;
        BuildOutcome build_outcome;
        std::optional<ExecOutcome> exec_outcome;
        bool have_artifact = false;
        try {
            artifact = extract_assembly(generation);
            have_artifact = true;
            SplicedUnit unit =
                splice(test_case, artifact, m.arch, m.splice_mode, prep.template_text);
            build_outcome = build(unit, test_case, m.toolchain, context);
        } catch (const HarnessError& e) {
            if (e.code() == errc::empty_response)
                build_outcome = synthetic_failure("(empty model response)");
            else if (e.code() == errc::empty_assembly)
                build_outcome = synthetic_failure("(no assembly extracted from response)");
            else
                throw;
        }
        record.extraction_method =
            have_artifact ? std::string(extraction_method_name(artifact.method)) : "none";

        if (build_outcome.succeeded)
            exec_outcome = execute(build_outcome, m.toolchain, test_case.timeout_ms);

        // Judge over the same truncated diagnostics the store keeps, so a
        // re-classification pass reproduces the verdict bit-for-bit.
        build_outcome.diagnostics = truncate_lines(build_outcome.diagnostics, diagnostics_cap());
        Verdict verdict =
            judge(build_outcome, exec_outcome, prep.expected_output, test_case.tolerance, *env.rules);

        record.build = summarize(build_outcome);
        if (exec_outcome) {
            ComparisonReport comparison;
            if (exec_outcome->kind == ExitKind::exited && exec_outcome->exit_code == 0)
                comparison = compare_outputs(exec_outcome->stdout_text, prep.expected_output,
                                             test_case.tolerance);
            record.exec = summarize(*exec_outcome, comparison);
            record.exec->stdout_digest = sha256_hex(exec_outcome->stdout_text);
        } else {
            record.exec.reset();
        }
        record.verdict = verdict;
        record.timestamp_ms = now_ms();

        if (verdict.kind == VerdictKind::success || round >= m.feedback_rounds)
            break;

        FeedbackSource prior;
        prior.verdict = verdict;
        prior.diagnostics = verdict.kind == VerdictKind::compile_error
                                ? build_outcome.diagnostics
                                : verdict.evidence +
                                      (exec_outcome ? "\n" + exec_outcome->stderr_text : "");
        prior.assembly_text = have_artifact ? artifact.assembly_text : "";
        spec = build_feedback_prompt(prep.base_spec, prior);
    }

    if (env.canonical)
        canonicalize(record);
    if (!env.keep_scratch) {
        std::error_code ec;
        std::filesystem::remove_all(sample_dir, ec);
    }
    return record;
}

} // namespace

RunOutcome run_experiment(const RunManifest& manifest, const RunOptions& options) {
    manifest.toolchain.validate();

    Corpus corpus = load_corpus(manifest.corpus_root);
    std::vector<const TestCase*> cases;
    if (manifest.case_filter.empty()) {
        for (const TestCase& tc : corpus.cases)
            cases.push_back(&tc);
    } else {
        for (const std::string& id : manifest.case_filter) {
            const TestCase* tc = corpus.find(id);
            if (!tc)
                raise(errc::missing_file, "case \"" + id + "\" not found in " + corpus.root_path);
            cases.push_back(tc);
        }
    }
    if (cases.empty())
        raise(errc::missing_file, "corpus at " + corpus.root_path + " has no cases");

    RuleTable rules = RuleTable::load(manifest.rules_path);
    PromptLibrary prompts(manifest.prompt_root, manifest.prompt_version);

    ProviderConfig provider_config = manifest.provider;
    std::string archive_dir = options.archive_dir.empty() ? provider_config.archive_dir
                                                          : options.archive_dir;
    if (provider_config.kind == ProviderKind::replay) {
        if (archive_dir.empty())
            raise(errc::manifest_parse, "replay provider needs an archive (archive_dir or --archive)");
        provider_config.archive_dir = archive_dir;
    }
    std::unique_ptr<Provider> provider = make_provider(provider_config);

    const bool canonical = options.canonical || manifest.canonical_timestamps;
    std::filesystem::path run_scratch = std::filesystem::path(manifest.workdir) / manifest.run_id;
    std::filesystem::create_directories(run_scratch);

    // Per-case prep: splice template, reference expected output, base prompt.
    std::vector<CasePrep> preps(cases.size());
    TemplateStore templates(manifest.toolchain, run_scratch / "_templates");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        CasePrep& prep = preps[i];
        prep.test_case = cases[i];
        if (manifest.splice_mode == SpliceMode::single_unit)
            prep.template_text = templates.get(*cases[i]);

        BuildContext ref_context{run_scratch / "_ref" / cases[i]->id};
        auto [ref_build, ref_exec] =
            build_reference(*cases[i], manifest.toolchain, manifest.toolchain.primary_reference(),
                            ref_context);
        if (!ref_build.succeeded)
            raise(errc::toolchain_unavailable, "reference build failed for case \"" +
                                                   cases[i]->id + "\": " + ref_build.diagnostics);
        if (!(ref_exec.kind == ExitKind::exited && ref_exec.exit_code == 0))
            raise(errc::inconsistent_input, "reference run failed for case \"" + cases[i]->id +
                                                "\": " + ref_exec.exit_description());
        prep.expected_output = ref_exec.stdout_text;

        PromptSpec spec = build_base_prompt(*cases[i], manifest.arch, prompts);
        prep.base_spec = augment_with_hints(std::move(spec), manifest.hint_categories, prompts);
    }

    std::filesystem::path run_dir = options.out_root / manifest.run_id;
    RunStore store = RunStore::create(run_dir);
    manifest.save(run_dir / "manifest.txt");

    SampleEnv env;
    env.manifest = &manifest;
    env.provider = provider.get();
    env.rules = &rules;
    env.run_scratch = run_scratch;
    env.keep_scratch = options.keep_scratch;
    env.record_archive = !archive_dir.empty() && provider_config.kind != ProviderKind::replay;
    env.archive_dir = archive_dir;
    env.canonical = canonical;

    const std::size_t total_tasks = cases.size() * static_cast<std::size_t>(manifest.samples_per_case);
    OrderedAppender appender(store);
    std::atomic<std::size_t> next_task{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    unsigned jobs = options.jobs > 0 ? static_cast<unsigned>(options.jobs)
                                     : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, total_tasks == 0 ? 1 : total_tasks);

    std::vector<SampleRecord> all_records(total_tasks);
    auto worker = [&] {
        while (!failed.load()) {
            std::size_t index = next_task.fetch_add(1);
            if (index >= total_tasks)
                return;
            std::size_t case_index = index / manifest.samples_per_case;
            int sample_index = static_cast<int>(index % manifest.samples_per_case);
            try {
                SampleRecord record = evaluate_sample(env, preps[case_index], sample_index);
                std::cerr << "[run " << manifest.run_id << "] " << record.case_id << "#"
                          << sample_index << " " << verdict_kind_name(record.verdict.kind)
                          << (record.verdict.category
                                  ? "/" + std::string(category_name(*record.verdict.category))
                                  : "")
                          << "\n";
                all_records[index] = record;
                appender.push(index, std::move(record));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i)
        pool.emplace_back(worker);
    for (std::thread& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);

    // Reports from the in-memory records (equal to the store by construction).
    std::vector<MetricsSummary> per_case = aggregate(all_records, GroupBy{.by_case = true});
    std::vector<MetricsSummary> overall = aggregate(all_records, GroupBy{});
    std::filesystem::path reports = run_dir / "reports";
    std::filesystem::create_directories(reports);
    write_file(reports / "summary_by_case.csv", summary_csv(per_case));
    write_file(reports / "summary_overall.csv", summary_csv(overall));
    write_file(reports / "error_histogram.csv",
               histogram_csv(error_histogram(all_records, rules)));
    write_file(reports / "scatter.csv", scatter_csv(all_records));

    if (!options.keep_scratch) {
        std::error_code ec;
        std::filesystem::remove_all(run_scratch, ec);
    }

    RunOutcome outcome;
    outcome.run_dir = run_dir;
    outcome.per_case = std::move(per_case);
    outcome.overall = overall.empty() ? MetricsSummary{} : overall.front();
    outcome.record_count = total_tasks;
    return outcome;
}

bool SmokeResult::all_pass() const {
    if (cases.empty())
        return false;
    for (const SmokeCaseResult& c : cases)
        if (!c.pass)
            return false;
    return true;
}

SmokeResult run_smoke(const Corpus& corpus, const ToolchainSpec& toolchain,
                      const std::filesystem::path& workdir, const RuleTable& rules,
                      SpliceMode mode) {
    toolchain.validate();
    SmokeResult result;
    TemplateStore templates(toolchain, workdir / "_templates");

    for (const TestCase& test_case : corpus.cases) {
        SmokeCaseResult case_result;
        case_result.case_id = test_case.id;
        std::filesystem::path scratch = workdir / test_case.id;
        try {
            BuildContext context{scratch};
            std::filesystem::create_directories(scratch);

            auto [ref_build, ref_exec] =
                build_reference(test_case, toolchain, toolchain.primary_reference(), context);
            if (!ref_build.succeeded)
                raise(errc::inconsistent_input, "reference build failed: " + ref_build.diagnostics);
            if (!(ref_exec.kind == ExitKind::exited && ref_exec.exit_code == 0))
                raise(errc::inconsistent_input,
                      "reference run " + ref_exec.exit_description());

            // The reference compiler's own view of the kernel.
            write_file(scratch / "kernel.c", test_case.kernel_source);
            ProcessResult asm_result = run_process(
                {.argv = {toolchain.reference_path(toolchain.primary_reference()), "-S", "kernel.c",
                          "-o", "kernel.s"},
                 .cwd = scratch.string(),
                 .timeout_ms = context.tool_timeout_ms});
            if (!(asm_result.kind == ExitKind::exited && asm_result.exit_code == 0))
                raise(errc::inconsistent_input, "kernel -S failed: " + asm_result.err);

            AsmArtifact artifact;
            artifact.assembly_text = read_file(scratch / "kernel.s");
            artifact.method = ExtractionMethod::whole_response;

            std::string template_text;
            if (mode == SpliceMode::single_unit)
                template_text = templates.get(test_case);
            SplicedUnit unit = splice(test_case, artifact, toolchain.arch, mode, template_text);
            BuildOutcome build_outcome = build(unit, test_case, toolchain, context);
            std::optional<ExecOutcome> exec_outcome;
            if (build_outcome.succeeded)
                exec_outcome = execute(build_outcome, toolchain, test_case.timeout_ms);

            Verdict verdict = judge(build_outcome, exec_outcome, ref_exec.stdout_text,
                                    test_case.tolerance, rules);
            case_result.pass = verdict.kind == VerdictKind::success;
            if (!case_result.pass)
                case_result.detail = std::string(verdict_kind_name(verdict.kind)) +
                                     (verdict.category
                                          ? "/" + std::string(category_name(*verdict.category))
                                          : "") +
                                     ": " + verdict.evidence;
        } catch (const HarnessError& e) {
            if (e.code() == errc::emulator_missing || e.code() == errc::toolchain_unavailable)
                throw;
            case_result.pass = false;
            case_result.detail = e.what();
        }
        result.cases.push_back(std::move(case_result));
    }
    return result;
}

} // namespace ceval
