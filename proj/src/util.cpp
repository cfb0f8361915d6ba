#include "ceval/util.hpp"

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "ceval/errors.hpp"

namespace ceval {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(errc::missing_file, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        raise(errc::missing_file, "read failed for " + path.string());
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view data) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(errc::store_write, "cannot open " + path.string() + " for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out)
        raise(errc::store_write, "write failed for " + path.string());
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size())
                lines.emplace_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        lines.emplace_back(line);
        start = nl + 1;
    }
    return lines;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(s.substr(start));
            break;
        }
        parts.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

std::optional<double> parse_number(std::string_view token) {
    if (token.empty())
        return std::nullopt;
    std::string buf(token);
    errno = 0;
    char* end = nullptr;
    double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || errno == ERANGE)
        return std::nullopt;
    return value;
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string truncate_lines(std::string_view text, std::size_t max_bytes) {
    if (text.size() <= max_bytes)
        return std::string(text);
    std::string_view head = text.substr(0, max_bytes);
    std::size_t nl = head.rfind('\n');
    if (nl != std::string_view::npos && nl > 0)
        head = head.substr(0, nl);
    std::string out(head);
    out += "\n... (truncated)";
    return out;
}

KvFile KvFile::parse(std::string_view text, std::string_view origin) {
    KvFile kv;
    kv.origin_ = origin;
    std::size_t lineno = 0;
    for (const std::string& raw : split_lines(text)) {
        ++lineno;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#')
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            raise(errc::manifest_parse, std::string(origin) + ":" + std::to_string(lineno) +
                                            ": expected key=value, got \"" + std::string(line) + "\"");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            raise(errc::manifest_parse,
                  std::string(origin) + ":" + std::to_string(lineno) + ": empty key");
        if (!kv.entries_.emplace(key, value).second)
            raise(errc::manifest_parse, std::string(origin) + ": duplicate key \"" + key + "\"");
    }
    return kv;
}

KvFile KvFile::load(const std::filesystem::path& path) {
    return parse(read_file(path), path.string());
}

bool KvFile::has(std::string_view key) const {
    return entries_.find(std::string(key)) != entries_.end();
}

std::string KvFile::get(std::string_view key, std::string_view fallback) const {
    auto it = entries_.find(std::string(key));
    return it == entries_.end() ? std::string(fallback) : it->second;
}

std::string KvFile::require(std::string_view key) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end())
        raise(errc::manifest_parse, origin_ + ": missing required key \"" + std::string(key) + "\"");
    return it->second;
}

double KvFile::get_double(std::string_view key, double fallback) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end())
        return fallback;
    auto v = parse_number(it->second);
    if (!v)
        raise(errc::manifest_parse,
              origin_ + ": key \"" + std::string(key) + "\" is not a number: " + it->second);
    return *v;
}

long long KvFile::get_int(std::string_view key, long long fallback) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end())
        return fallback;
    try {
        std::size_t pos = 0;
        long long v = std::stoll(it->second, &pos);
        if (pos != it->second.size())
            throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        raise(errc::manifest_parse,
              origin_ + ": key \"" + std::string(key) + "\" is not an integer: " + it->second);
    }
}

bool KvFile::get_bool(std::string_view key, bool fallback) const {
    auto it = entries_.find(std::string(key));
    if (it == entries_.end())
        return fallback;
    std::string v = to_lower(it->second);
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    raise(errc::manifest_parse,
          origin_ + ": key \"" + std::string(key) + "\" is not a boolean: " + it->second);
}

void KvFile::reject_unknown(const std::vector<std::string>& known) const {
    for (const auto& [key, value] : entries_) {
        (void)value;
        bool found = false;
        for (const std::string& k : known)
            if (k == key) {
                found = true;
                break;
            }
        if (!found)
            raise(errc::manifest_parse, origin_ + ": unknown key \"" + key + "\"");
    }
}

std::string kv_serialize(const std::vector<std::pair<std::string, std::string>>& entries) {
    std::string out;
    for (const auto& [key, value] : entries) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

TempDir::TempDir(std::string_view prefix) {
    std::filesystem::path base = std::filesystem::temp_directory_path();
    std::string tmpl = (base / (std::string(prefix) + "-XXXXXX")).string();
    if (!mkdtemp(tmpl.data()))
        raise(errc::scratch_dir, "mkdtemp failed: " + std::string(std::strerror(errno)));
    path_ = tmpl;
}

TempDir::~TempDir() {
    if (!keep_) {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
}

int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

} // namespace ceval
