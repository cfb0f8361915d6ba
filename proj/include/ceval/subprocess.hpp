#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ceval {

enum class ExitKind { exited, signaled, timed_out };

struct SpawnSpec {
    std::vector<std::string> argv; // argv[0] resolved via PATH when not absolute
    std::string cwd;               // empty = inherit
    int timeout_ms = -1;           // < 0 = no timeout
    std::size_t capture_limit = 1 << 20; // per stream; overflow is flagged, not fatal
};

struct ProcessResult {
    ExitKind kind = ExitKind::exited;
    int exit_code = -1;      // valid when kind == exited
    int term_signal = 0;     // valid when kind == signaled
    std::string signal_name; // "SIGSEGV", "SIGILL", ... or "SIG<n>"
    std::string out;
    std::string err;
    bool out_truncated = false;
    bool err_truncated = false;
    int64_t duration_ms = 0;
};

// Runs argv with no shell, stdin from /dev/null, both streams captured.
// Timeout kills the whole process group. Throws spawn_failed when the
// binary cannot be executed at all.
ProcessResult run_process(const SpawnSpec& spec);

// PATH lookup; absolute/relative paths with a slash are checked directly.
std::optional<std::string> find_executable(const std::string& name);

// Process-wide cap on concurrent child processes (default: logical CPUs).
void set_spawn_limit(unsigned n);

std::string signal_name_of(int signo);

} // namespace ceval
