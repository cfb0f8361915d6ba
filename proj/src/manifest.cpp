#include "ceval/manifest.hpp"

#include "ceval/errors.hpp"
#include "ceval/util.hpp"

namespace ceval {

namespace {

const std::vector<std::string> kKnownKeys = {
    "run_id",        "corpus_root",      "arch",
    "provider",      "model",            "endpoint",
    "api_key_env",   "temperature",      "max_output_tokens",
    "request_timeout_ms", "max_in_flight", "requests_per_second",
    "retry_initial_ms", "retry_factor",  "retry_max_attempts",
    "scripted_dir",  "archive_dir",      "samples_per_case",
    "prompt_version", "prompt_root",     "rules_path",
    "hint_categories", "feedback_rounds", "seed",
    "splice_mode",   "workdir",          "canonical_timestamps",
    "cases",         "toolchain.gcc",    "toolchain.clang",
    "toolchain.driver", "toolchain.emulator", "toolchain.sysroot",
    "toolchain.extra_flags",
};

std::string resolve(const std::filesystem::path& base, const std::string& path) {
    if (path.empty())
        return path;
    std::filesystem::path p(path);
    if (p.is_absolute())
        return path;
    return (base / p).lexically_normal().string();
}

} // namespace

RunManifest RunManifest::parse(std::string_view text, const std::filesystem::path& base_dir,
                               std::string_view origin) {
    KvFile kv = KvFile::parse(text, origin);
    kv.reject_unknown(kKnownKeys);

    RunManifest m;
    m.raw_text = std::string(text);
    m.run_id = kv.require("run_id");
    m.corpus_root = resolve(base_dir, kv.require("corpus_root"));
    m.arch = parse_arch(kv.get("arch", "x86_64"));

    m.provider.kind = parse_provider_kind(kv.get("provider", "scripted"));
    m.provider.model_name = kv.get("model", "unknown");
    m.provider.endpoint = kv.get("endpoint", "");
    m.provider.api_key_env = kv.get("api_key_env", "");
    m.provider.sampling_temperature = kv.get_double("temperature", 0.8);
    m.provider.max_output_tokens = static_cast<int>(kv.get_int("max_output_tokens", 4096));
    m.provider.request_timeout_ms = static_cast<int>(kv.get_int("request_timeout_ms", 120000));
    m.provider.max_in_flight = static_cast<int>(kv.get_int("max_in_flight", 4));
    m.provider.requests_per_second = kv.get_double("requests_per_second", 0.0);
    m.provider.retry.initial_delay_ms = static_cast<int>(kv.get_int("retry_initial_ms", 1000));
    m.provider.retry.factor = kv.get_double("retry_factor", 2.0);
    m.provider.retry.max_attempts = static_cast<int>(kv.get_int("retry_max_attempts", 5));
    m.provider.scripted_dir = resolve(base_dir, kv.get("scripted_dir", ""));
    m.provider.archive_dir = resolve(base_dir, kv.get("archive_dir", ""));

    m.samples_per_case = static_cast<int>(kv.get_int("samples_per_case", 10));
    if (m.samples_per_case <= 0)
        raise(errc::manifest_parse, std::string(origin) + ": samples_per_case must be positive");
    m.prompt_version = kv.get("prompt_version", "v1");
    m.prompt_root = resolve(base_dir, kv.get("prompt_root", "assets/prompts"));
    m.rules_path = resolve(base_dir, kv.get("rules_path", "assets/rules/diagnostic_rules.tsv"));

    for (const std::string& raw : split(kv.get("hint_categories", ""), ',')) {
        std::string name(trim(raw));
        if (name.empty())
            continue;
        if (name == "all") {
            for (ErrorCategory c : category_table_order())
                if (c != ErrorCategory::other_compile_error && c != ErrorCategory::other_exec_error)
                    m.hint_categories.insert(c);
            continue;
        }
        m.hint_categories.insert(parse_category(name));
    }

    m.feedback_rounds = static_cast<int>(kv.get_int("feedback_rounds", 0));
    if (m.feedback_rounds < 0)
        raise(errc::manifest_parse, std::string(origin) + ": feedback_rounds must be >= 0");
    m.seed = kv.get_int("seed", 0);
    m.splice_mode = parse_splice_mode(kv.get("splice_mode", "single-unit-splice"));
    m.canonical_timestamps = kv.get_bool("canonical_timestamps", false);
    m.workdir = resolve(base_dir, kv.get("workdir", "work"));
    for (const std::string& raw : split(kv.get("cases", ""), ','))
        if (!trim(raw).empty())
            m.case_filter.emplace_back(trim(raw));

    // Toolchain: explicit paths win; anything unset is discovered for the arch.
    bool any_tool = kv.has("toolchain.gcc") || kv.has("toolchain.clang") ||
                    kv.has("toolchain.driver") || kv.has("toolchain.emulator");
    if (any_tool) {
        m.toolchain.arch = m.arch;
        if (kv.has("toolchain.gcc"))
            m.toolchain.reference_compilers["gcc"] = kv.get("toolchain.gcc", "");
        if (kv.has("toolchain.clang"))
            m.toolchain.reference_compilers["clang"] = kv.get("toolchain.clang", "");
        if (m.toolchain.reference_compilers.empty())
            raise(errc::manifest_parse,
                  std::string(origin) + ": toolchain needs gcc or clang configured");
        m.toolchain.assembler_driver =
            kv.get("toolchain.driver", m.toolchain.reference_compilers.begin()->second);
        m.toolchain.emulator = kv.get("toolchain.emulator", "");
        m.toolchain.sysroot = kv.get("toolchain.sysroot", "");
    } else {
        ToolchainProbe probe = probe_toolchain(m.arch);
        if (!probe.toolchain) {
            if (!probe.emulator_found)
                raise(errc::emulator_missing, "no user-mode emulator found for " +
                                                  std::string(arch_name(m.arch)) +
                                                  " (expected qemu-" +
                                                  std::string(arch_name(m.arch)) + " on PATH)");
            raise(errc::toolchain_unavailable,
                  "no cross toolchain found for " + std::string(arch_name(m.arch)));
        }
        m.toolchain = *probe.toolchain;
    }
    for (const std::string& raw : split(kv.get("toolchain.extra_flags", ""), ' '))
        if (!trim(raw).empty())
            m.toolchain.extra_flags.emplace_back(trim(raw));

    return m;
}

RunManifest RunManifest::load(const std::filesystem::path& path) {
    std::filesystem::path abs = std::filesystem::absolute(path);
    return parse(read_file(abs), abs.parent_path(), abs.string());
}

std::string RunManifest::serialize() const {
    std::vector<std::pair<std::string, std::string>> entries;
    entries.emplace_back("run_id", run_id);
    entries.emplace_back("corpus_root", corpus_root);
    entries.emplace_back("arch", std::string(arch_name(arch)));
    entries.emplace_back("provider", std::string(provider_kind_name(provider.kind)));
    entries.emplace_back("model", provider.model_name);
    if (!provider.endpoint.empty())
        entries.emplace_back("endpoint", provider.endpoint);
    if (!provider.api_key_env.empty())
        entries.emplace_back("api_key_env", provider.api_key_env);
    entries.emplace_back("temperature", format_fixed(provider.sampling_temperature, 6));
    entries.emplace_back("max_output_tokens", std::to_string(provider.max_output_tokens));
    entries.emplace_back("request_timeout_ms", std::to_string(provider.request_timeout_ms));
    if (!provider.scripted_dir.empty())
        entries.emplace_back("scripted_dir", provider.scripted_dir);
    if (!provider.archive_dir.empty())
        entries.emplace_back("archive_dir", provider.archive_dir);
    entries.emplace_back("samples_per_case", std::to_string(samples_per_case));
    entries.emplace_back("prompt_version", prompt_version);
    entries.emplace_back("prompt_root", prompt_root);
    entries.emplace_back("rules_path", rules_path);
    if (!hint_categories.empty()) {
        std::vector<std::string> names;
        for (ErrorCategory c : category_table_order())
            if (hint_categories.count(c))
                names.emplace_back(category_name(c));
        entries.emplace_back("hint_categories", join(names, ","));
    }
    entries.emplace_back("feedback_rounds", std::to_string(feedback_rounds));
    entries.emplace_back("seed", std::to_string(seed));
    entries.emplace_back("splice_mode", std::string(splice_mode_name(splice_mode)));
    entries.emplace_back("canonical_timestamps", canonical_timestamps ? "true" : "false");
    entries.emplace_back("workdir", workdir);
    if (!case_filter.empty())
        entries.emplace_back("cases", join(case_filter, ","));
    for (const auto& [name, path] : toolchain.reference_compilers)
        entries.emplace_back("toolchain." + name, path);
    entries.emplace_back("toolchain.driver", toolchain.assembler_driver);
    if (!toolchain.emulator.empty())
        entries.emplace_back("toolchain.emulator", toolchain.emulator);
    if (!toolchain.sysroot.empty())
        entries.emplace_back("toolchain.sysroot", toolchain.sysroot);
    if (!toolchain.extra_flags.empty())
        entries.emplace_back("toolchain.extra_flags", join(toolchain.extra_flags, " "));
    return kv_serialize(entries);
}

void RunManifest::save(const std::filesystem::path& path) const {
    write_file(path, raw_text.empty() ? serialize() : raw_text);
}

} // namespace ceval
