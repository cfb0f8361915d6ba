#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ceval/arch.hpp"
#include "ceval/corpus.hpp"
#include "ceval/subprocess.hpp"

namespace ceval {

struct AsmArtifact; // provider.hpp

struct ToolchainSpec {
    Arch arch = Arch::x86_64;
    std::map<std::string, std::string> reference_compilers; // "gcc" / "clang" -> path
    std::string assembler_driver; // C compiler driver used to assemble + link .s
    std::string emulator;         // user-mode emulator for non-host arch; empty = none
    std::string sysroot;          // optional, passed as --sysroot
    std::vector<std::string> extra_flags;

    // gcc when configured, else the first configured compiler.
    const std::string& primary_reference() const;
    std::string reference_path(const std::string& which) const; // raises toolchain_unavailable

    // Paths exist and are executable; raises toolchain_unavailable naming the binary.
    void validate() const;
};

// Discovers gcc/clang on PATH for the host. Raises when neither exists.
ToolchainSpec host_toolchain();

// Cross toolchain probe: complete spec, or what is missing.
struct ToolchainProbe {
    std::optional<ToolchainSpec> toolchain;
    bool driver_found = false;
    bool emulator_found = false;
};
ToolchainProbe probe_toolchain(Arch arch);

enum class SpliceMode { single_unit, separate_object };
std::string_view splice_mode_name(SpliceMode mode);
SpliceMode parse_splice_mode(std::string_view name);

struct SplicedUnit {
    std::string assembly_text; // complete unit (single_unit) or kernel alone
    SpliceMode mode = SpliceMode::single_unit;
    std::string template_id;
};

// Reference assembly of main_source with template-local labels renamed and
// the arch marker line appended. Raises template_missing when the reference
// compiler rejects main_source.
std::string make_template(const TestCase& test_case, const ToolchainSpec& toolchain,
                          const std::filesystem::path& scratch);

// Thread-safe per-case template cache for one toolchain.
class TemplateStore {
public:
    TemplateStore(ToolchainSpec toolchain, std::filesystem::path cache_dir);
    const std::string& get(const TestCase& test_case);

private:
    ToolchainSpec toolchain_;
    std::filesystem::path cache_dir_;
    std::mutex mutex_;
    std::map<std::string, std::string> templates_;
};

// Pure splice of kernel assembly into a template. single_unit replaces the
// marker line; separate_object passes the kernel through for later linking.
SplicedUnit splice(const TestCase& test_case, const AsmArtifact& asm_artifact, Arch arch,
                   SpliceMode mode, const std::string& template_text);

enum class BuildStage { assemble, link };
std::string_view build_stage_name(BuildStage stage);

struct BuildOutcome {
    bool succeeded = false;
    BuildStage stage = BuildStage::assemble; // stage reached (failure point, or link on success)
    std::string diagnostics;                 // captured stderr, relative paths only
    std::string artifact_path;               // set iff succeeded
    int64_t duration_ms = 0;
};

struct ExecOutcome {
    ExitKind kind = ExitKind::exited;
    int exit_code = -1;
    std::string signal_name;
    std::string stdout_text;
    std::string stderr_text;
    bool stdout_truncated = false;
    int64_t duration_ms = 0;

    std::string exit_description() const; // "exited(0)", "signaled(SIGSEGV)", "timed_out"
};

struct BuildContext {
    std::filesystem::path scratch_dir; // owned by the caller, one per sample
    int tool_timeout_ms = 60000;
};

// Assembles (and links) the unit in scratch. Tool rejections are data:
// succeeded=false with diagnostics. Only scratch/toolchain setup raises.
BuildOutcome build(const SplicedUnit& unit, const TestCase& test_case,
                   const ToolchainSpec& toolchain, const BuildContext& context);

// Runs the built artifact, natively or under the configured emulator.
ExecOutcome execute(const BuildOutcome& outcome, const ToolchainSpec& toolchain, int timeout_ms);

// Whole-program reference build (kernel.c + main.c) and run; the stdout is
// the differential oracle's expected output.
std::pair<BuildOutcome, ExecOutcome> build_reference(const TestCase& test_case,
                                                     const ToolchainSpec& toolchain,
                                                     const std::string& which,
                                                     const BuildContext& context);

} // namespace ceval
