#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace ceval {

enum class ProviderKind { http_chat, replay, scripted };
std::string_view provider_kind_name(ProviderKind kind);
ProviderKind parse_provider_kind(std::string_view name);

struct RetryPolicy {
    int initial_delay_ms = 1000;
    double factor = 2.0;
    int max_attempts = 5;
};

struct ProviderConfig {
    ProviderKind kind = ProviderKind::scripted;
    std::string endpoint; // http-chat only; OpenAI-compatible chat completions URL
    std::string model_name = "unknown";
    double sampling_temperature = 0.8;
    int max_output_tokens = 4096;
    int request_timeout_ms = 120000;
    std::string api_key_env; // name of the env var holding the credential
    std::string archive_dir; // replay source
    std::string scripted_dir; // scripted response table root
    RetryPolicy retry;
    int max_in_flight = 4;              // http-chat concurrent request cap
    double requests_per_second = 0.0;   // token bucket; 0 = unlimited
};

struct GenerationRequest {
    std::string prompt_text;
    std::string case_id; // used by the scripted table; not part of the digest
    int sample_index = 0;
};

struct GenerationResult {
    std::string raw_text;
    int64_t latency_ms = 0;
    std::string request_digest;
};

// Stable key of (prompt text, model, sample index, temperature).
std::string request_digest(std::string_view prompt, std::string_view model, int sample_index,
                           double temperature);

class Provider {
public:
    virtual ~Provider() = default;
    virtual GenerationResult generate(const GenerationRequest& request) = 0;
    virtual const ProviderConfig& config() const = 0;
};

std::unique_ptr<Provider> make_provider(const ProviderConfig& config);

struct RecordMeta {
    std::string model_name;
    double temperature = 0.0;
    int sample_index = 0;
    std::string prompt_digest;
};

// Writes <digest>.txt (raw bytes) + <digest>.meta; idempotent for identical
// content, raises archive_write on conflicting re-record or IO failure.
void record_result(const GenerationResult& result, const RecordMeta& meta,
                   const std::filesystem::path& archive_dir);

enum class ExtractionMethod { fenced_block, directive_heuristic, whole_response };
std::string_view extraction_method_name(ExtractionMethod method);

struct AsmArtifact {
    std::string assembly_text;
    ExtractionMethod method = ExtractionMethod::whole_response;
    std::string fence_language_hint;
};

// Pure function of raw_text: first assembly-like fenced block, else the
// maximal directive-bearing region, else the whole response. Raises
// empty_response when raw_text is blank.
AsmArtifact extract_assembly(const GenerationResult& result);

} // namespace ceval
