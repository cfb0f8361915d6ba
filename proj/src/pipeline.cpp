#include "ceval/pipeline.hpp"

#include <regex>
#include <system_error>

#include <unistd.h>

#include "ceval/digest.hpp"
#include "ceval/errors.hpp"
#include "ceval/provider.hpp"
#include "ceval/util.hpp"

namespace ceval {

namespace {

bool tool_ok(const ProcessResult& pr) {
    return pr.kind == ExitKind::exited && pr.exit_code == 0;
}

std::string tool_diagnostics(const ProcessResult& pr) {
    if (pr.kind == ExitKind::timed_out)
        return "(tool invocation timed out)\n" + pr.err;
    return pr.err;
}

// Template-local labels get a distinguishing infix so compiler-emitted
// kernel assembly (which reuses .L2/.LFB0/.LC0 names) can share the unit.
std::string rename_local_labels(const std::string& asm_text) {
    static const std::regex label_re(R"(\.L([A-Za-z0-9_$.]+))");
    std::string out;
    out.reserve(asm_text.size() + 256);
    for (const std::string& line : split_lines(asm_text)) {
        std::string_view t = trim(line);
        bool literal = t.starts_with(".string") || t.starts_with(".ascii") || t.starts_with(".asciz");
        if (literal)
            out += line;
        else
            out += std::regex_replace(line, label_re, ".Ltpl_$1");
        out += '\n';
    }
    return out;
}

std::vector<std::string> cross_link_flags(const ToolchainSpec& tc) {
    std::vector<std::string> flags;
    if (!tc.sysroot.empty())
        flags.push_back("--sysroot=" + tc.sysroot);
    return flags;
}

} // namespace

const std::string& ToolchainSpec::primary_reference() const {
    static const std::string gcc_name = "gcc";
    auto it = reference_compilers.find(gcc_name);
    if (it != reference_compilers.end())
        return it->first;
    if (reference_compilers.empty())
        raise(errc::toolchain_unavailable, "no reference compilers configured");
    return reference_compilers.begin()->first;
}

std::string ToolchainSpec::reference_path(const std::string& which) const {
    auto it = reference_compilers.find(which);
    if (it == reference_compilers.end())
        raise(errc::toolchain_unavailable, "reference compiler \"" + which + "\" not configured");
    return it->second;
}

void ToolchainSpec::validate() const {
    auto check = [](const std::string& what, const std::string& path) {
        if (path.empty())
            return;
        if (!find_executable(path))
            raise(errc::toolchain_unavailable, what + " not executable: " + path);
    };
    if (assembler_driver.empty())
        raise(errc::toolchain_unavailable, "assembler driver not configured");
    check("assembler driver", assembler_driver);
    for (const auto& [name, path] : reference_compilers)
        check("reference compiler " + name, path);
    check("emulator", emulator);
}

ToolchainSpec host_toolchain() {
    ToolchainSpec tc;
    tc.arch = host_arch();
    if (auto gcc = find_executable("gcc"))
        tc.reference_compilers["gcc"] = *gcc;
    if (auto clang = find_executable("clang"))
        tc.reference_compilers["clang"] = *clang;
    if (tc.reference_compilers.empty())
        raise(errc::toolchain_unavailable, "neither gcc nor clang found on PATH");
    tc.assembler_driver = tc.reference_compilers.at(tc.primary_reference());
    return tc;
}

ToolchainProbe probe_toolchain(Arch arch) {
    ToolchainProbe probe;
    if (arch == host_arch()) {
        probe.toolchain = host_toolchain();
        probe.driver_found = true;
        probe.emulator_found = true; // native execution needs none
        return probe;
    }

    std::string prefix = std::string(arch_name(arch)) + "-linux-gnu-";
    std::optional<std::string> gcc = find_executable(prefix + "gcc");
    std::optional<std::string> emulator = find_executable("qemu-" + std::string(arch_name(arch)));
    probe.driver_found = gcc.has_value();
    probe.emulator_found = emulator.has_value();
    if (!probe.driver_found || !probe.emulator_found)
        return probe;

    ToolchainSpec tc;
    tc.arch = arch;
    tc.reference_compilers["gcc"] = *gcc;
    tc.assembler_driver = *gcc;
    tc.emulator = *emulator;
    tc.extra_flags.push_back("-static"); // user-mode emulation without a sysroot
    probe.toolchain = std::move(tc);
    return probe;
}

std::string_view splice_mode_name(SpliceMode mode) {
    return mode == SpliceMode::single_unit ? "single-unit-splice" : "separate-object-link";
}

SpliceMode parse_splice_mode(std::string_view name) {
    std::string n = to_lower(name);
    if (n == "single-unit-splice" || n == "single-unit" || n == "splice")
        return SpliceMode::single_unit;
    if (n == "separate-object-link" || n == "separate-object" || n == "link")
        return SpliceMode::separate_object;
    raise(errc::manifest_parse, "unknown splice mode \"" + std::string(name) + "\"");
}

std::string_view build_stage_name(BuildStage stage) {
    return stage == BuildStage::assemble ? "assemble" : "link";
}

std::string make_template(const TestCase& test_case, const ToolchainSpec& toolchain,
                          const std::filesystem::path& scratch) {
    std::error_code ec;
    std::filesystem::create_directories(scratch, ec);
    if (ec)
        raise(errc::scratch_dir, scratch.string() + ": " + ec.message());

    write_file(scratch / "main.c", test_case.main_source);
    std::vector<std::string> argv = {toolchain.reference_path(toolchain.primary_reference()), "-S",
                                     "main.c", "-o", "main.s"};
    for (const std::string& f : cross_link_flags(toolchain))
        argv.push_back(f);
    ProcessResult pr = run_process({.argv = argv, .cwd = scratch.string(), .timeout_ms = 60000});
    if (!tool_ok(pr))
        raise(errc::template_missing, "template build failed for case \"" + test_case.id +
                                          "\" (" + std::string(arch_name(toolchain.arch)) +
                                          "): " + tool_diagnostics(pr));

    std::string text = rename_local_labels(read_file(scratch / "main.s"));
    if (!text.empty() && text.back() != '\n')
        text += '\n';
    text += marker_line(toolchain.arch);
    text += '\n';
    return text;
}

TemplateStore::TemplateStore(ToolchainSpec toolchain, std::filesystem::path cache_dir)
    : toolchain_(std::move(toolchain)), cache_dir_(std::move(cache_dir)) {}

const std::string& TemplateStore::get(const TestCase& test_case) {
    std::lock_guard lock(mutex_);
    auto it = templates_.find(test_case.id);
    if (it != templates_.end())
        return it->second;
    std::string text = make_template(test_case, toolchain_, cache_dir_ / test_case.id);
    return templates_.emplace(test_case.id, std::move(text)).first->second;
}

SplicedUnit splice(const TestCase& test_case, const AsmArtifact& asm_artifact, Arch arch,
                   SpliceMode mode, const std::string& template_text) {
    if (trim(asm_artifact.assembly_text).empty())
        raise(errc::empty_assembly, "no assembly extracted for case \"" + test_case.id + "\"");

    std::string kernel_text = asm_artifact.assembly_text;
    if (kernel_text.back() != '\n')
        kernel_text += '\n';

    SplicedUnit unit;
    unit.mode = mode;
    unit.template_id =
        std::string(arch_name(arch)) + "/" + test_case.id + "/" + std::string(splice_mode_name(mode));

    if (mode == SpliceMode::separate_object) {
        unit.assembly_text = std::move(kernel_text);
        return unit;
    }

    const std::string marker = marker_line(arch);
    std::vector<std::string> lines = split_lines(template_text);
    std::size_t marker_count = 0;
    std::string out;
    out.reserve(template_text.size() + kernel_text.size());
    for (const std::string& line : lines) {
        if (trim(line) == marker) {
            ++marker_count;
            out += kernel_text;
        } else {
            out += line;
            out += '\n';
        }
    }
    if (marker_count != 1)
        raise(errc::template_missing, "template for case \"" + test_case.id + "\" has " +
                                          std::to_string(marker_count) + " marker lines (want 1)");
    unit.assembly_text = std::move(out);
    return unit;
}

BuildOutcome build(const SplicedUnit& unit, const TestCase& test_case,
                   const ToolchainSpec& toolchain, const BuildContext& context) {
    std::error_code ec;
    std::filesystem::create_directories(context.scratch_dir, ec);
    if (ec)
        raise(errc::scratch_dir, context.scratch_dir.string() + ": " + ec.message());
    const std::string cwd = context.scratch_dir.string();

    BuildOutcome outcome;
    int64_t start = now_ms();
    auto finish = [&](BuildOutcome o) {
        o.duration_ms = now_ms() - start;
        return o;
    };

    // Tools run with cwd = scratch and relative paths so diagnostics carry no
    // host-specific prefixes.
    write_file(context.scratch_dir / "unit.s", unit.assembly_text);

    std::vector<std::string> objects = {"unit.o"};
    {
        ProcessResult pr = run_process(
            {.argv = {toolchain.assembler_driver, "-c", "unit.s", "-o", "unit.o"},
             .cwd = cwd,
             .timeout_ms = context.tool_timeout_ms});
        if (!tool_ok(pr)) {
            outcome.succeeded = false;
            outcome.stage = BuildStage::assemble;
            outcome.diagnostics = tool_diagnostics(pr);
            return finish(outcome);
        }
        outcome.diagnostics = pr.err; // warnings, possibly empty
    }

    if (unit.mode == SpliceMode::separate_object) {
        write_file(context.scratch_dir / "main.c", test_case.main_source);
        ProcessResult pr = run_process(
            {.argv = {toolchain.assembler_driver, "-c", "main.c", "-o", "main.o"},
             .cwd = cwd,
             .timeout_ms = context.tool_timeout_ms});
        if (!tool_ok(pr)) {
            outcome.succeeded = false;
            outcome.stage = BuildStage::assemble;
            outcome.diagnostics = tool_diagnostics(pr);
            return finish(outcome);
        }
        objects.push_back("main.o");
    }

    std::vector<std::string> argv = {toolchain.assembler_driver};
    argv.insert(argv.end(), objects.begin(), objects.end());
    argv.insert(argv.end(), {"-o", "prog", "-lm"});
    for (const std::string& f : cross_link_flags(toolchain))
        argv.push_back(f);
    for (const std::string& f : toolchain.extra_flags)
        argv.push_back(f);

    ProcessResult pr =
        run_process({.argv = argv, .cwd = cwd, .timeout_ms = context.tool_timeout_ms});
    outcome.stage = BuildStage::link;
    if (!tool_ok(pr)) {
        outcome.succeeded = false;
        outcome.diagnostics += tool_diagnostics(pr);
        return finish(outcome);
    }
    outcome.succeeded = true;
    outcome.diagnostics += pr.err;
    outcome.artifact_path = (context.scratch_dir / "prog").string();
    return finish(outcome);
}

std::string ExecOutcome::exit_description() const {
    switch (kind) {
    case ExitKind::exited: return "exited(" + std::to_string(exit_code) + ")";
    case ExitKind::signaled: return "signaled(" + signal_name + ")";
    case ExitKind::timed_out: return "timed_out";
    }
    return "unknown";
}

ExecOutcome execute(const BuildOutcome& outcome, const ToolchainSpec& toolchain, int timeout_ms) {
    if (!outcome.succeeded || outcome.artifact_path.empty())
        raise(errc::inconsistent_input, "execute called on a failed build");

    const bool native = toolchain.arch == host_arch();
    if (!native && toolchain.emulator.empty())
        raise(errc::emulator_missing, "no user-mode emulator configured for " +
                                          std::string(arch_name(toolchain.arch)));

    std::filesystem::path artifact(outcome.artifact_path);
    SpawnSpec spec;
    if (native)
        spec.argv = {"./" + artifact.filename().string()};
    else
        spec.argv = {toolchain.emulator, "./" + artifact.filename().string()};
    spec.cwd = artifact.parent_path().string();
    spec.timeout_ms = timeout_ms;

    ProcessResult pr = run_process(spec);
    ExecOutcome exec;
    exec.kind = pr.kind;
    exec.exit_code = pr.exit_code;
    exec.signal_name = pr.signal_name;
    exec.stdout_text = std::move(pr.out);
    exec.stderr_text = std::move(pr.err);
    exec.stdout_truncated = pr.out_truncated;
    exec.duration_ms = pr.duration_ms;
    return exec;
}

std::pair<BuildOutcome, ExecOutcome> build_reference(const TestCase& test_case,
                                                     const ToolchainSpec& toolchain,
                                                     const std::string& which,
                                                     const BuildContext& context) {
    std::filesystem::path dir = context.scratch_dir / ("ref-" + which);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        raise(errc::scratch_dir, dir.string() + ": " + ec.message());

    write_file(dir / "kernel.c", test_case.kernel_source);
    write_file(dir / "main.c", test_case.main_source);

    std::vector<std::string> argv = {toolchain.reference_path(which), "kernel.c", "main.c", "-o",
                                     "ref", "-lm"};
    for (const std::string& f : cross_link_flags(toolchain))
        argv.push_back(f);
    for (const std::string& f : toolchain.extra_flags)
        argv.push_back(f);

    BuildOutcome build_outcome;
    int64_t start = now_ms();
    ProcessResult pr =
        run_process({.argv = argv, .cwd = dir.string(), .timeout_ms = context.tool_timeout_ms});
    build_outcome.duration_ms = now_ms() - start;
    build_outcome.stage = BuildStage::link;
    build_outcome.succeeded = tool_ok(pr);
    build_outcome.diagnostics = tool_diagnostics(pr);
    if (!build_outcome.succeeded)
        return {build_outcome, ExecOutcome{}};
    build_outcome.artifact_path = (dir / "ref").string();

    ExecOutcome exec = execute(build_outcome, toolchain, test_case.timeout_ms);
    return {build_outcome, exec};
}

} // namespace ceval
