#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ceval {

// Every named failure the harness can raise. Expected evaluation outcomes
// (a sample that fails to assemble, a wrong result) are data, not errors.
enum class errc {
    // corpus
    missing_file,
    manifest_parse,
    duplicate_case_id,
    // provider
    credential_missing,
    replay_miss,
    scripted_miss,
    provider_timeout,
    provider_rejected,
    empty_response,
    archive_write,
    // prompting
    unsupported_arch,
    feedback_on_success,
    // pipeline
    toolchain_unavailable,
    scratch_dir,
    template_missing,
    empty_assembly,
    emulator_missing,
    spawn_failed,
    // verdict / metrics
    inconsistent_input,
    domain_error,
    key_mismatch,
    // runstore
    duplicate_sample,
    store_write,
    store_parse,
    rule_parse,
};

std::string_view errc_name(errc code);

class HarnessError : public std::runtime_error {
public:
    HarnessError(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) {
    throw HarnessError(code, msg);
}

} // namespace ceval
