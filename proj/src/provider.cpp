#include "ceval/provider.hpp"

#include <algorithm>
#include <cctype>

#include "ceval/digest.hpp"
#include "ceval/errors.hpp"
#include "ceval/util.hpp"

namespace ceval {

std::string_view provider_kind_name(ProviderKind kind) {
    switch (kind) {
    case ProviderKind::http_chat: return "http-chat";
    case ProviderKind::replay: return "replay";
    case ProviderKind::scripted: return "scripted";
    }
    return "scripted";
}

ProviderKind parse_provider_kind(std::string_view name) {
    std::string n = to_lower(name);
    if (n == "http-chat" || n == "http" || n == "chat")
        return ProviderKind::http_chat;
    if (n == "replay")
        return ProviderKind::replay;
    if (n == "scripted")
        return ProviderKind::scripted;
    raise(errc::manifest_parse, "unknown provider kind \"" + std::string(name) + "\"");
}

std::string request_digest(std::string_view prompt, std::string_view model, int sample_index,
                           double temperature) {
    std::string canonical;
    canonical += "model=";
    canonical += model;
    canonical += "\ntemperature=";
    canonical += format_fixed(temperature, 6);
    canonical += "\nsample_index=";
    canonical += std::to_string(sample_index);
    canonical += "\nprompt:\n";
    canonical += prompt;
    return sha256_hex(canonical);
}

namespace {

std::filesystem::path archive_text_path(const std::filesystem::path& dir, std::string_view digest) {
    return dir / (std::string(digest) + ".txt");
}

class ScriptedProvider final : public Provider {
public:
    explicit ScriptedProvider(ProviderConfig config) : config_(std::move(config)) {
        if (config_.scripted_dir.empty())
            raise(errc::manifest_parse, "scripted provider needs scripted_dir");
    }

    GenerationResult generate(const GenerationRequest& request) override {
        GenerationResult result;
        result.request_digest = request_digest(request.prompt_text, config_.model_name,
                                               request.sample_index, config_.sampling_temperature);
        std::filesystem::path table(config_.scripted_dir);
        std::filesystem::path entry =
            table / request.case_id / (std::to_string(request.sample_index) + ".txt");
        if (!std::filesystem::exists(entry))
            entry = table / "default.txt";
        if (!std::filesystem::exists(entry))
            raise(errc::scripted_miss, "no scripted response for (" + request.case_id + ", " +
                                           std::to_string(request.sample_index) + ") under " +
                                           config_.scripted_dir);
        result.raw_text = read_file(entry);
        return result;
    }

    const ProviderConfig& config() const override { return config_; }

private:
    ProviderConfig config_;
};

class ReplayProvider final : public Provider {
public:
    explicit ReplayProvider(ProviderConfig config) : config_(std::move(config)) {
        if (config_.archive_dir.empty())
            raise(errc::manifest_parse, "replay provider needs archive_dir");
    }

    GenerationResult generate(const GenerationRequest& request) override {
        GenerationResult result;
        result.request_digest = request_digest(request.prompt_text, config_.model_name,
                                               request.sample_index, config_.sampling_temperature);
        std::filesystem::path entry =
            archive_text_path(config_.archive_dir, result.request_digest);
        if (!std::filesystem::exists(entry))
            raise(errc::replay_miss,
                  "archive has no entry for digest " + result.request_digest + " (case " +
                      request.case_id + ", sample " + std::to_string(request.sample_index) + ")");
        result.raw_text = read_file(entry);
        return result;
    }

    const ProviderConfig& config() const override { return config_; }

private:
    ProviderConfig config_;
};

} // namespace

std::unique_ptr<Provider> make_http_provider(const ProviderConfig& config); // http_provider.cpp

std::unique_ptr<Provider> make_provider(const ProviderConfig& config) {
    switch (config.kind) {
    case ProviderKind::scripted:
        return std::make_unique<ScriptedProvider>(config);
    case ProviderKind::replay:
        return std::make_unique<ReplayProvider>(config);
    case ProviderKind::http_chat:
        break;
    }
    return make_http_provider(config);
}

void record_result(const GenerationResult& result, const RecordMeta& meta,
                   const std::filesystem::path& archive_dir) {
    std::error_code ec;
    std::filesystem::create_directories(archive_dir, ec);
    if (ec)
        raise(errc::archive_write, archive_dir.string() + ": " + ec.message());

    std::filesystem::path text_path = archive_text_path(archive_dir, result.request_digest);
    if (std::filesystem::exists(text_path)) {
        if (read_file(text_path) != result.raw_text)
            raise(errc::archive_write, "archive entry " + text_path.string() +
                                           " already exists with different content");
        return; // idempotent re-record
    }

    try {
        write_file(text_path, result.raw_text);
        std::string meta_text = kv_serialize({
            {"model", meta.model_name},
            {"temperature", format_fixed(meta.temperature, 6)},
            {"sample_index", std::to_string(meta.sample_index)},
            {"prompt_digest", meta.prompt_digest},
        });
        write_file(archive_dir / (result.request_digest + ".meta"), meta_text);
    } catch (const HarnessError& e) {
        raise(errc::archive_write, e.what());
    }
}

std::string_view extraction_method_name(ExtractionMethod method) {
    switch (method) {
    case ExtractionMethod::fenced_block: return "fenced-block";
    case ExtractionMethod::directive_heuristic: return "directive-heuristic";
    case ExtractionMethod::whole_response: return "whole-response";
    }
    return "whole-response";
}

namespace {

bool assembly_like_hint(std::string_view hint) {
    std::string h = to_lower(trim(hint));
    return h.empty() || h == "asm" || h == "s" || h == "assembly" || h == "gas" || h == "nasm";
}

bool is_directive_line(std::string_view line) {
    std::string_view t = trim(line);
    return t.size() > 1 && t.front() == '.' &&
           (std::isalpha(static_cast<unsigned char>(t[1])) || t[1] == 'L' || t[1] == '_');
}

bool is_label_line(std::string_view line) {
    std::string_view t = trim(line);
    if (t.empty())
        return false;
    char c = t.front();
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '$'))
        return false;
    std::size_t i = 1;
    while (i < t.size() &&
           (std::isalnum(static_cast<unsigned char>(t[i])) || t[i] == '_' || t[i] == '.' ||
            t[i] == '$'))
        ++i;
    if (i >= t.size() || t[i] != ':')
        return false;
    std::string_view rest = trim(t.substr(i + 1));
    return rest.empty() || rest.starts_with('#') || rest.starts_with("//") || rest.starts_with(';');
}

// Accepts the shapes an instruction line can take while rejecting prose:
// short, no sentence-final period, leading mnemonic token.
bool is_instruction_like(std::string_view line) {
    std::string_view t = trim(line);
    if (t.empty())
        return true; // blank lines continue a listing
    if (t.starts_with('#') || t.starts_with("//") || t.starts_with(';'))
        return true;
    if (is_directive_line(t) || is_label_line(t))
        return true;
    char c = t.front();
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
        return false;
    if (t.back() == '.' || t.back() == ':')
        return false;
    int words = 0;
    bool in_word = false;
    for (char ch : t) {
        if (std::isspace(static_cast<unsigned char>(ch)))
            in_word = false;
        else if (!in_word) {
            in_word = true;
            ++words;
        }
    }
    return words <= 6;
}

struct Fence {
    std::string hint;
    std::string body;
};

std::vector<Fence> find_fences(std::string_view text) {
    std::vector<Fence> fences;
    std::vector<std::string> lines = split_lines(text);
    std::size_t i = 0;
    while (i < lines.size()) {
        std::string_view t = trim(lines[i]);
        if (!t.starts_with("```")) {
            ++i;
            continue;
        }
        Fence fence;
        fence.hint = std::string(trim(t.substr(3)));
        ++i;
        std::string body;
        while (i < lines.size() && !trim(lines[i]).starts_with("```")) {
            body += lines[i];
            body += '\n';
            ++i;
        }
        if (i < lines.size())
            ++i; // skip closing fence
        fence.body = std::move(body);
        fences.push_back(std::move(fence));
    }
    return fences;
}

} // namespace

AsmArtifact extract_assembly(const GenerationResult& result) {
    if (trim(result.raw_text).empty())
        raise(errc::empty_response, "model response is blank (digest " + result.request_digest + ")");

    // First assembly-like fenced block wins; later fences are commentary.
    for (const Fence& fence : find_fences(result.raw_text)) {
        if (!assembly_like_hint(fence.hint) || trim(fence.body).empty())
            continue;
        AsmArtifact artifact;
        artifact.assembly_text = fence.body;
        artifact.method = ExtractionMethod::fenced_block;
        artifact.fence_language_hint = fence.hint;
        return artifact;
    }

    // Unfenced listing: the span from the first directive/label line through
    // the last, extended while lines still look like assembly.
    std::vector<std::string> lines = split_lines(result.raw_text);
    std::size_t first = lines.size(), last = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_directive_line(lines[i]) || is_label_line(lines[i])) {
            if (first == lines.size())
                first = i;
            last = i;
        }
    }
    if (first != lines.size()) {
        std::size_t end = last;
        while (end + 1 < lines.size() && is_instruction_like(lines[end + 1]))
            ++end;
        while (end > first && trim(lines[end]).empty())
            --end;
        std::string body;
        for (std::size_t i = first; i <= end; ++i) {
            body += lines[i];
            body += '\n';
        }
        AsmArtifact artifact;
        artifact.assembly_text = std::move(body);
        artifact.method = ExtractionMethod::directive_heuristic;
        return artifact;
    }

    AsmArtifact artifact;
    artifact.assembly_text = result.raw_text;
    artifact.method = ExtractionMethod::whole_response;
    return artifact;
}

} // namespace ceval
