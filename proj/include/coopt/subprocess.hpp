// SPDX-License-Identifier: Apache-2.0
#pragma once

// Minimal subprocess runner: argv exec (no shell), stdin feeding, separate
// stdout/stderr capture with a byte cap, and a kill-on-timeout deadline.

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <fcntl.h>
#include <poll.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

namespace coopt {

struct ProcessOptions {
    std::string stdin_data;
    double timeout_seconds = 60.0;
    std::size_t max_capture_bytes = 64u << 20;
    std::optional<std::vector<std::string>> env_allowlist; // unset: inherit all
    std::optional<std::string> working_dir;
};

struct ProcessResult {
    int exit_code = -1; // 128+signal when killed by a signal
    bool timed_out = false;
    std::string stdout_text;
    std::string stderr_text;
    bool stdout_truncated = false;
    bool stderr_truncated = false;
    double wall_seconds = 0.0;

    bool ok() const { return exit_code == 0 && !timed_out; }
};

namespace detail {

inline void ignore_sigpipe_once() {
    static const bool done = [] {
        std::signal(SIGPIPE, SIG_IGN);
        return true;
    }();
    (void)done;
}

inline void set_nonblocking(int fd) {
    int flags = fcntl(fd, F_GETFL, 0);
    fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

} // namespace detail

// Resolves `name` against PATH (or directly if it contains a slash) and
// checks the execute bit. Returns empty when not found.
inline std::string find_executable(const std::string& name) {
    auto executable = [](const std::string& path) {
        struct stat st{};
        return ::stat(path.c_str(), &st) == 0 && S_ISREG(st.st_mode) &&
               ::access(path.c_str(), X_OK) == 0;
    };
    if (name.find('/') != std::string::npos)
        return executable(name) ? name : std::string{};
    const char* path_env = ::getenv("PATH");
    if (!path_env) return {};
    std::string paths(path_env);
    std::size_t start = 0;
    while (start <= paths.size()) {
        std::size_t end = paths.find(':', start);
        if (end == std::string::npos) end = paths.size();
        std::string dir = paths.substr(start, end - start);
        if (!dir.empty()) {
            std::string candidate = dir + "/" + name;
            if (executable(candidate)) return candidate;
        }
        start = end + 1;
    }
    return {};
}

inline ProcessResult run_process(const std::vector<std::string>& argv,
                                 const ProcessOptions& opts = {}) {
    if (argv.empty())
        throw std::invalid_argument("run_process: empty argv");
    detail::ignore_sigpipe_once();

    int in_pipe[2], out_pipe[2], err_pipe[2];
    if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0 || ::pipe(err_pipe) != 0)
        throw std::runtime_error("run_process: pipe() failed");

    const auto start_time = std::chrono::steady_clock::now();
    pid_t pid = ::fork();
    if (pid < 0)
        throw std::runtime_error("run_process: fork() failed");

    if (pid == 0) {
        ::dup2(in_pipe[0], STDIN_FILENO);
        ::dup2(out_pipe[1], STDOUT_FILENO);
        ::dup2(err_pipe[1], STDERR_FILENO);
        for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1],
                       err_pipe[0], err_pipe[1]})
            ::close(fd);
        if (opts.working_dir && ::chdir(opts.working_dir->c_str()) != 0)
            ::_exit(127);

        std::vector<char*> args;
        args.reserve(argv.size() + 1);
        for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
        args.push_back(nullptr);

        if (opts.env_allowlist) {
            std::vector<std::string> kept;
            for (const auto& key : *opts.env_allowlist)
                if (const char* value = ::getenv(key.c_str()))
                    kept.push_back(key + "=" + value);
            std::vector<char*> envp;
            for (auto& entry : kept) envp.push_back(entry.data());
            envp.push_back(nullptr);
            ::execvpe(args[0], args.data(), envp.data());
        } else {
            ::execvp(args[0], args.data());
        }
        ::_exit(127);
    }

    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    ::close(err_pipe[1]);
    detail::set_nonblocking(in_pipe[1]);
    detail::set_nonblocking(out_pipe[0]);
    detail::set_nonblocking(err_pipe[0]);

    ProcessResult result;
    std::size_t stdin_written = 0;
    bool stdin_open = true;
    if (opts.stdin_data.empty()) {
        ::close(in_pipe[1]);
        stdin_open = false;
    }
    bool out_open = true, err_open = true;
    bool killed = false;
    const auto deadline =
        start_time + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                         std::chrono::duration<double>(opts.timeout_seconds));
    char buffer[65536];

    while (out_open || err_open) {
        struct pollfd fds[3];
        nfds_t nfds = 0;
        int out_idx = -1, err_idx = -1, in_idx = -1;
        if (out_open) {
            out_idx = static_cast<int>(nfds);
            fds[nfds++] = {out_pipe[0], POLLIN, 0};
        }
        if (err_open) {
            err_idx = static_cast<int>(nfds);
            fds[nfds++] = {err_pipe[0], POLLIN, 0};
        }
        if (stdin_open) {
            in_idx = static_cast<int>(nfds);
            fds[nfds++] = {in_pipe[1], POLLOUT, 0};
        }

        auto now = std::chrono::steady_clock::now();
        long remaining_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                deadline - now)
                                .count();
        if (remaining_ms <= 0 && !killed) {
            ::kill(pid, SIGKILL);
            killed = true;
            result.timed_out = true;
        }
        int timeout_ms = killed ? 1000 : static_cast<int>(std::max(1L, std::min(remaining_ms, 1000L)));
        int ready = ::poll(fds, nfds, timeout_ms);
        if (ready < 0) {
            if (errno == EINTR) continue;
            break;
        }

        auto drain = [&](int idx, int fd, std::string& sink, bool& open,
                         bool& truncated) {
            if (idx < 0) return;
            if (!(fds[idx].revents & (POLLIN | POLLHUP | POLLERR))) return;
            while (true) {
                ssize_t n = ::read(fd, buffer, sizeof(buffer));
                if (n > 0) {
                    std::size_t room = opts.max_capture_bytes > sink.size()
                                           ? opts.max_capture_bytes - sink.size()
                                           : 0;
                    if (room > 0)
                        sink.append(buffer, std::min<std::size_t>(room, static_cast<std::size_t>(n)));
                    if (static_cast<std::size_t>(n) > room) truncated = true;
                    continue;
                }
                if (n == 0) {
                    ::close(fd);
                    open = false;
                }
                break; // EAGAIN or EOF
            }
        };
        drain(out_idx, out_pipe[0], result.stdout_text, out_open,
              result.stdout_truncated);
        drain(err_idx, err_pipe[0], result.stderr_text, err_open,
              result.stderr_truncated);

        if (in_idx >= 0 && (fds[in_idx].revents & (POLLOUT | POLLERR | POLLHUP))) {
            if (fds[in_idx].revents & (POLLERR | POLLHUP)) {
                ::close(in_pipe[1]);
                stdin_open = false;
            } else {
                ssize_t n = ::write(in_pipe[1],
                                    opts.stdin_data.data() + stdin_written,
                                    opts.stdin_data.size() - stdin_written);
                if (n > 0) stdin_written += static_cast<std::size_t>(n);
                if (n < 0 && errno != EAGAIN && errno != EINTR) {
                    ::close(in_pipe[1]);
                    stdin_open = false;
                }
                if (stdin_written == opts.stdin_data.size()) {
                    ::close(in_pipe[1]);
                    stdin_open = false;
                }
            }
        }
    }
    if (stdin_open) ::close(in_pipe[1]);

    int status = 0;
    ::waitpid(pid, &status, 0);
    result.wall_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start_time)
                              .count();
    if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status))
        result.exit_code = 128 + WTERMSIG(status);
    return result;
}

} // namespace coopt
