#include "ceval/subprocess.hpp"

#include <cerrno>
#include <chrono>
#include <condition_variable>
#include <csignal>
#include <cstring>
#include <filesystem>
#include <mutex>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include "ceval/errors.hpp"

namespace ceval {

namespace {

// Bounds the number of live children across all worker threads.
class SpawnGate {
public:
    void configure(unsigned n) {
        std::lock_guard lock(mutex_);
        limit_ = n == 0 ? 1 : n;
    }
    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [&] { return active_ < limit_; });
        ++active_;
    }
    void release() {
        {
            std::lock_guard lock(mutex_);
            --active_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    unsigned limit_ = std::max(1u, std::thread::hardware_concurrency());
    unsigned active_ = 0;
};

SpawnGate& spawn_gate() {
    static SpawnGate gate;
    return gate;
}

struct GateHold {
    GateHold() { spawn_gate().acquire(); }
    ~GateHold() { spawn_gate().release(); }
};

int64_t steady_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

// Drains fd into sink up to cap; flags truncation but keeps draining so the
// child never blocks on a full pipe. Returns false on EOF.
bool drain(int fd, std::string& sink, std::size_t cap, bool& truncated) {
    char buf[16384];
    while (true) {
        ssize_t n = ::read(fd, buf, sizeof buf);
        if (n > 0) {
            if (sink.size() < cap) {
                std::size_t take = std::min(static_cast<std::size_t>(n), cap - sink.size());
                sink.append(buf, take);
                if (take < static_cast<std::size_t>(n))
                    truncated = true;
            } else {
                truncated = true;
            }
            continue;
        }
        if (n == 0)
            return false;
        if (errno == EAGAIN || errno == EWOULDBLOCK)
            return true;
        if (errno == EINTR)
            continue;
        return false;
    }
}

void set_nonblock(int fd) {
    int flags = fcntl(fd, F_GETFL, 0);
    fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

} // namespace

void set_spawn_limit(unsigned n) { spawn_gate().configure(n); }

std::string signal_name_of(int signo) {
    switch (signo) {
    case SIGSEGV: return "SIGSEGV";
    case SIGILL: return "SIGILL";
    case SIGFPE: return "SIGFPE";
    case SIGBUS: return "SIGBUS";
    case SIGABRT: return "SIGABRT";
    case SIGKILL: return "SIGKILL";
    case SIGTERM: return "SIGTERM";
    case SIGINT: return "SIGINT";
    case SIGTRAP: return "SIGTRAP";
    case SIGPIPE: return "SIGPIPE";
    case SIGSYS: return "SIGSYS";
    case SIGXCPU: return "SIGXCPU";
    default: return "SIG" + std::to_string(signo);
    }
}

std::optional<std::string> find_executable(const std::string& name) {
    auto runnable = [](const std::string& p) {
        struct stat st{};
        return ::stat(p.c_str(), &st) == 0 && S_ISREG(st.st_mode) && ::access(p.c_str(), X_OK) == 0;
    };
    if (name.find('/') != std::string::npos)
        return runnable(name) ? std::optional(name) : std::nullopt;
    const char* path = std::getenv("PATH");
    if (!path)
        return std::nullopt;
    std::string_view rest(path);
    while (!rest.empty()) {
        std::size_t colon = rest.find(':');
        std::string_view dir = rest.substr(0, colon);
        rest = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
        if (dir.empty())
            continue;
        std::string candidate = std::string(dir) + "/" + name;
        if (runnable(candidate))
            return candidate;
    }
    return std::nullopt;
}

ProcessResult run_process(const SpawnSpec& spec) {
    if (spec.argv.empty())
        raise(errc::spawn_failed, "empty argv");

    std::optional<std::string> exe = find_executable(spec.argv[0]);
    if (!exe)
        raise(errc::spawn_failed, "executable not found: " + spec.argv[0]);

    GateHold hold;

    int out_pipe[2], err_pipe[2], status_pipe[2];
    if (pipe2(out_pipe, O_CLOEXEC) != 0 || pipe2(err_pipe, O_CLOEXEC) != 0 ||
        pipe2(status_pipe, O_CLOEXEC) != 0)
        raise(errc::spawn_failed, std::string("pipe2: ") + std::strerror(errno));

    std::vector<char*> argv;
    std::string exe_path = *exe;
    argv.push_back(exe_path.data());
    std::vector<std::string> args(spec.argv.begin() + 1, spec.argv.end());
    for (std::string& a : args)
        argv.push_back(a.data());
    argv.push_back(nullptr);

    int64_t start = steady_ms();
    pid_t pid = ::fork();
    if (pid < 0) {
        for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1], status_pipe[0],
                       status_pipe[1]})
            ::close(fd);
        raise(errc::spawn_failed, std::string("fork: ") + std::strerror(errno));
    }

    if (pid == 0) {
        ::setpgid(0, 0); // own process group so timeouts kill helpers too
        int devnull = ::open("/dev/null", O_RDONLY);
        if (devnull >= 0)
            ::dup2(devnull, STDIN_FILENO);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(err_pipe[1], STDERR_FILENO);
        if (!spec.cwd.empty() && ::chdir(spec.cwd.c_str()) != 0) {
            int e = errno;
            (void)!::write(status_pipe[1], &e, sizeof e);
            _exit(127);
        }
        ::execv(exe_path.c_str(), argv.data());
        int e = errno;
        (void)!::write(status_pipe[1], &e, sizeof e);
        _exit(127);
    }

    ::close(out_pipe[1]);
    ::close(err_pipe[1]);
    ::close(status_pipe[1]);
    set_nonblock(out_pipe[0]);
    set_nonblock(err_pipe[0]);

    ProcessResult result;
    bool out_open = true, err_open = true;
    bool killed_on_timeout = false;
    int64_t deadline = spec.timeout_ms >= 0 ? start + spec.timeout_ms : -1;

    while (out_open || err_open) {
        struct pollfd fds[2];
        nfds_t nfds = 0;
        if (out_open)
            fds[nfds++] = {out_pipe[0], POLLIN, 0};
        if (err_open)
            fds[nfds++] = {err_pipe[0], POLLIN, 0};

        int wait_ms = -1;
        if (deadline >= 0 && !killed_on_timeout) {
            int64_t left = deadline - steady_ms();
            wait_ms = left > 0 ? static_cast<int>(std::min<int64_t>(left, 200)) : 0;
        }
        int rc = ::poll(fds, nfds, wait_ms);
        if (rc < 0 && errno != EINTR)
            break;

        if (out_open && !drain(out_pipe[0], result.out, spec.capture_limit, result.out_truncated)) {
            ::close(out_pipe[0]);
            out_open = false;
        }
        if (err_open && !drain(err_pipe[0], result.err, spec.capture_limit, result.err_truncated)) {
            ::close(err_pipe[0]);
            err_open = false;
        }
        if (deadline >= 0 && !killed_on_timeout && steady_ms() >= deadline) {
            ::kill(-pid, SIGKILL);
            ::kill(pid, SIGKILL);
            killed_on_timeout = true;
        }
    }
    if (out_open)
        ::close(out_pipe[0]);
    if (err_open)
        ::close(err_pipe[0]);

    // After EOF on both pipes the child is dead or exiting; a belated timeout
    // can still fire while we were reading slow output.
    if (deadline >= 0 && !killed_on_timeout && steady_ms() >= deadline) {
        ::kill(-pid, SIGKILL);
        ::kill(pid, SIGKILL);
        killed_on_timeout = true;
    }

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
    }
    result.duration_ms = steady_ms() - start;

    int exec_errno = 0;
    ssize_t n = ::read(status_pipe[0], &exec_errno, sizeof exec_errno);
    ::close(status_pipe[0]);
    if (n == static_cast<ssize_t>(sizeof exec_errno))
        raise(errc::spawn_failed,
              "cannot execute " + exe_path + ": " + std::strerror(exec_errno));

    if (killed_on_timeout) {
        result.kind = ExitKind::timed_out;
        if (spec.timeout_ms >= 0 && result.duration_ms < spec.timeout_ms)
            result.duration_ms = spec.timeout_ms;
    } else if (WIFSIGNALED(status)) {
        result.kind = ExitKind::signaled;
        result.term_signal = WTERMSIG(status);
        result.signal_name = signal_name_of(result.term_signal);
    } else {
        result.kind = ExitKind::exited;
        result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    return result;
}

} // namespace ceval
