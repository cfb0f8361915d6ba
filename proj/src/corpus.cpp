#include "ceval/corpus.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "ceval/digest.hpp"
#include "ceval/errors.hpp"
#include "ceval/pipeline.hpp"
#include "ceval/util.hpp"
#include "ceval/verdict.hpp"

namespace ceval {

namespace {

constexpr std::array<std::string_view, 20> kCanonicalOrder = {
    "trmm",    "gemver",  "gesummv",     "2mm",        "mvt",
    "saxpy",   "sgemm",   "conv2d",      "softmax",    "pooling",
    "relu",    "resize",  "rotate",      "fir",        "iir",
    "correlation", "covariance", "fdtd-2d", "jacobi-1d", "jacobi-2d",
};

constexpr std::array<std::string_view, 4> kDomainTags = {
    "linear-algebra", "intelligent-computing", "image-processing", "audio-processing"};

std::size_t canonical_index(std::string_view id) {
    for (std::size_t i = 0; i < kCanonicalOrder.size(); ++i)
        if (kCanonicalOrder[i] == id)
            return i;
    return kCanonicalOrder.size();
}

TestCase load_case(const std::filesystem::path& dir) {
    const std::string id = dir.filename().string();
    auto need = [&](const char* name) {
        std::filesystem::path p = dir / name;
        if (!std::filesystem::exists(p))
            raise(errc::missing_file, "case \"" + id + "\" lacks " + name);
        return read_file(p);
    };

    TestCase tc;
    tc.id = id;
    tc.kernel_source = need("kernel.c");
    tc.main_source = need("main.c");
    std::string manifest_text = need("case.txt");

    KvFile kv = KvFile::parse(manifest_text, (dir / "case.txt").string());
    kv.reject_unknown({"kernel_symbol", "tolerance", "timeout_ms", "domain_tag"});
    tc.kernel_symbol = kv.require("kernel_symbol");
    tc.tolerance = kv.get_double("tolerance", 1e-4);
    tc.timeout_ms = static_cast<int>(kv.get_int("timeout_ms", 10000));
    tc.domain_tag = kv.get("domain_tag", "linear-algebra");

    if (tc.tolerance < 0)
        raise(errc::manifest_parse, kv.origin() + ": tolerance must be non-negative");
    if (tc.timeout_ms <= 0)
        raise(errc::manifest_parse, kv.origin() + ": timeout_ms must be positive");
    if (std::find(kDomainTags.begin(), kDomainTags.end(), tc.domain_tag) == kDomainTags.end())
        raise(errc::manifest_parse, kv.origin() + ": unknown domain_tag \"" + tc.domain_tag + "\"");

    tc.content_digest = sha256_hex(tc.kernel_source + "\x1f" + tc.main_source + "\x1f" + manifest_text);
    return tc;
}

} // namespace

std::span<const std::string_view> canonical_case_order() { return kCanonicalOrder; }

const TestCase* Corpus::find(std::string_view id) const {
    for (const TestCase& tc : cases)
        if (tc.id == id)
            return &tc;
    return nullptr;
}

Corpus load_corpus(const std::filesystem::path& root) {
    if (!std::filesystem::is_directory(root))
        raise(errc::missing_file, "corpus root " + root.string() + " is not a directory");

    Corpus corpus;
    corpus.root_path = root.string();

    std::vector<std::filesystem::path> dirs;
    for (const auto& entry : std::filesystem::directory_iterator(root))
        if (entry.is_directory())
            dirs.push_back(entry.path());

    std::sort(dirs.begin(), dirs.end(), [](const auto& a, const auto& b) {
        auto ia = canonical_index(a.filename().string());
        auto ib = canonical_index(b.filename().string());
        if (ia != ib)
            return ia < ib;
        return a.filename().string() < b.filename().string();
    });

    std::set<std::string> seen;
    for (const auto& dir : dirs) {
        TestCase tc = load_case(dir);
        if (!seen.insert(tc.id).second)
            raise(errc::duplicate_case_id, "duplicate case id \"" + tc.id + "\"");
        corpus.cases.push_back(std::move(tc));
    }
    return corpus;
}

bool ValidationReport::ok() const {
    if (!kernel_standalone || !main_standalone || !cross_agreement)
        return false;
    if (checks.empty())
        return false;
    for (const CompilerCheck& c : checks)
        if (!c.compiled || !c.executed || !c.deterministic)
            return false;
    return true;
}

ValidationReport validate_case(const TestCase& test_case, const ToolchainSpec& toolchain) {
    if (toolchain.reference_compilers.empty())
        raise(errc::toolchain_unavailable, "no reference compilers configured");

    ValidationReport report;
    report.case_id = test_case.id;

    auto note = [&](const std::string& msg) {
        if (report.detail.empty())
            report.detail = msg;
    };

    TempDir scratch("ceval-validate");
    BuildContext context{scratch.path()};
    write_file(scratch.path() / "kernel.c", test_case.kernel_source);
    write_file(scratch.path() / "main.c", test_case.main_source);

    // Standalone compile of each translation unit with the primary compiler.
    const std::string primary = toolchain.reference_path(toolchain.primary_reference());
    for (auto [file, flag] : {std::pair{"kernel.c", &report.kernel_standalone},
                              std::pair{"main.c", &report.main_standalone}}) {
        ProcessResult pr = run_process({.argv = {primary, "-c", file, "-o", "/dev/null"},
                                        .cwd = scratch.path().string(),
                                        .timeout_ms = context.tool_timeout_ms});
        if (!(pr.kind == ExitKind::exited && pr.exit_code == 0)) {
            *flag = false;
            note(std::string(file) + " does not compile standalone: " + pr.err);
        }
    }

    for (const auto& [which, path] : toolchain.reference_compilers) {
        (void)path;
        CompilerCheck check;
        check.compiler = which;

        auto [build_outcome, exec_outcome] = build_reference(test_case, toolchain, which, context);
        check.compiled = build_outcome.succeeded;
        check.diagnostics = build_outcome.diagnostics;
        if (!check.compiled) {
            note(which + " failed to build: " + build_outcome.diagnostics);
            report.checks.push_back(std::move(check));
            continue;
        }

        check.executed = exec_outcome.kind == ExitKind::exited && exec_outcome.exit_code == 0;
        if (!check.executed) {
            note(which + " run " + exec_outcome.exit_description());
            report.checks.push_back(std::move(check));
            continue;
        }
        check.output = exec_outcome.stdout_text;
        check.output_digest = sha256_hex(exec_outcome.stdout_text);

        ExecOutcome second = execute(build_outcome, toolchain, test_case.timeout_ms);
        if (second.stdout_text != exec_outcome.stdout_text) {
            check.deterministic = false;
            note(which + " output differs between two consecutive runs");
        }
        report.checks.push_back(std::move(check));
    }

    // Pairwise differential agreement between reference compilers.
    for (std::size_t i = 0; i + 1 < report.checks.size(); ++i) {
        const CompilerCheck& a = report.checks[i];
        const CompilerCheck& b = report.checks[i + 1];
        if (!a.executed || !b.executed)
            continue;
        ComparisonReport cmp = compare_outputs(b.output, a.output, test_case.tolerance);
        if (!cmp.matched) {
            report.cross_agreement = false;
            note(a.compiler + " vs " + b.compiler + " disagree: " + cmp.detail());
        }
    }
    return report;
}

} // namespace ceval
