#include "ceval/errors.hpp"

namespace ceval {

std::string_view errc_name(errc code) {
    switch (code) {
    case errc::missing_file: return "MissingFile";
    case errc::manifest_parse: return "ManifestParseError";
    case errc::duplicate_case_id: return "DuplicateCaseId";
    case errc::credential_missing: return "CredentialMissing";
    case errc::replay_miss: return "ReplayMiss";
    case errc::scripted_miss: return "ScriptedMiss";
    case errc::provider_timeout: return "ProviderTimeout";
    case errc::provider_rejected: return "ProviderRejected";
    case errc::empty_response: return "EmptyResponse";
    case errc::archive_write: return "ArchiveWriteError";
    case errc::unsupported_arch: return "UnsupportedArch";
    case errc::feedback_on_success: return "FeedbackOnSuccess";
    case errc::toolchain_unavailable: return "ToolchainUnavailable";
    case errc::scratch_dir: return "ScratchDirError";
    case errc::template_missing: return "TemplateMissing";
    case errc::empty_assembly: return "EmptyAssembly";
    case errc::emulator_missing: return "EmulatorMissing";
    case errc::spawn_failed: return "SpawnError";
    case errc::inconsistent_input: return "InconsistentInput";
    case errc::domain_error: return "DomainError";
    case errc::key_mismatch: return "KeyMismatch";
    case errc::duplicate_sample: return "DuplicateSample";
    case errc::store_write: return "StoreWriteError";
    case errc::store_parse: return "StoreParseError";
    case errc::rule_parse: return "RuleParseError";
    }
    return "HarnessError";
}

} // namespace ceval
