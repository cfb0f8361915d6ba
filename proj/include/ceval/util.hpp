#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ceval {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

std::string_view trim(std::string_view s);
std::vector<std::string> split_lines(std::string_view text);
std::vector<std::string> split(std::string_view s, char sep);
std::string to_lower(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Full-token numeric parse; rejects partial consumption ("1.5x" is not numeric).
std::optional<double> parse_number(std::string_view token);

// Fixed-point rendering with '.' separator, no locale. decimals in [0, 17].
std::string format_fixed(double value, int decimals);

// Keeps at most max_bytes, cutting at a line boundary where possible.
std::string truncate_lines(std::string_view text, std::size_t max_bytes);

// Flat UTF-8 key=value file ('#' comments, blank lines ignored).
// Duplicate keys and lines without '=' are parse errors.
class KvFile {
public:
    static KvFile parse(std::string_view text, std::string_view origin);
    static KvFile load(const std::filesystem::path& path);

    bool has(std::string_view key) const;
    std::string get(std::string_view key, std::string_view fallback) const;
    std::string require(std::string_view key) const;
    double get_double(std::string_view key, double fallback) const;
    long long get_int(std::string_view key, long long fallback) const;
    bool get_bool(std::string_view key, bool fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }
    const std::string& origin() const { return origin_; }

    // Raises manifest_parse naming the first key not in `known`.
    void reject_unknown(const std::vector<std::string>& known) const;

private:
    std::map<std::string, std::string> entries_;
    std::string origin_;
};

std::string kv_serialize(const std::vector<std::pair<std::string, std::string>>& entries);

// mkdtemp-backed scratch directory, removed on destruction unless disarmed.
class TempDir {
public:
    explicit TempDir(std::string_view prefix = "ceval");
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    void keep() { keep_ = true; }

private:
    std::filesystem::path path_;
    bool keep_ = false;
};

int64_t now_ms();

} // namespace ceval
