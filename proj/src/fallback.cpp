#include "delag/fallback.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <utility>

#include "delag/hoa.hpp"

namespace delag {

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += '\'';
  return out;
}

std::string build_command(const Formula& f, const FallbackOptions& opts) {
  const std::string text = to_string(f);
  const std::string value = opts.raw_substitution ? text : shell_quote(text);
  std::string cmd;
  const std::string& tmpl = opts.command_template;
  bool substituted = false;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '%' && i + 1 < tmpl.size() && tmpl[i + 1] == 'f') {
      cmd += value;
      substituted = true;
      ++i;
    } else {
      cmd += tmpl[i];
    }
  }
  if (!substituted) {
    throw fallback_error("fallback command template lacks the %f placeholder: " +
                         tmpl);
  }
  return cmd;
}

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (pipe(fds) != 0) {
      throw fallback_error(std::string("pipe: ") + std::strerror(errno));
    }
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) close(fds[1]);
    fds[1] = -1;
  }
};

struct RunResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
  std::string err;
};

RunResult run_command(const std::string& cmd, int timeout_seconds) {
  Pipe out_pipe;
  Pipe err_pipe;
  pid_t pid = fork();
  if (pid < 0) {
    throw fallback_error(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(out_pipe.fds[1], STDOUT_FILENO);
    dup2(err_pipe.fds[1], STDERR_FILENO);
    out_pipe.close_read();
    out_pipe.close_write();
    err_pipe.close_read();
    err_pipe.close_write();
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  out_pipe.close_write();
  err_pipe.close_write();

  RunResult res;
  const auto deadline = std::chrono::steady_clock::now() +
                        std::chrono::seconds(timeout_seconds);
  constexpr std::size_t kMaxCapture = std::size_t{64} << 20;
  bool open_out = true;
  bool open_err = true;
  while (open_out || open_err) {
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      res.timed_out = true;
      break;
    }
    int wait_ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
            .count());
    struct pollfd fds[2];
    nfds_t n = 0;
    if (open_out) fds[n++] = {out_pipe.fds[0], POLLIN, 0};
    if (open_err) fds[n++] = {err_pipe.fds[0], POLLIN, 0};
    int rc = poll(fds, n, std::min(wait_ms, 200));
    if (rc < 0 && errno != EINTR) break;
    char buf[4096];
    for (nfds_t i = 0; i < n; ++i) {
      if (!(fds[i].revents & (POLLIN | POLLHUP))) continue;
      ssize_t got = read(fds[i].fd, buf, sizeof buf);
      bool is_out = fds[i].fd == out_pipe.fds[0];
      if (got > 0) {
        std::string& sink = is_out ? res.out : res.err;
        if (sink.size() < kMaxCapture) {
          sink.append(buf, static_cast<std::size_t>(got));
        }
      } else if (got == 0 || (got < 0 && errno != EINTR && errno != EAGAIN)) {
        (is_out ? open_out : open_err) = false;
      }
    }
  }

  if (res.timed_out) {
    kill(-pid, SIGKILL);
    kill(pid, SIGKILL);
  }
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status)) {
    res.exit_code = WEXITSTATUS(status);
  } else {
    res.exit_code = -1;
  }
  return res;
}

std::string first_line(const std::string& s) {
  auto pos = s.find('\n');
  std::string line = pos == std::string::npos ? s : s.substr(0, pos);
  if (line.size() > 200) line.resize(200);
  return line;
}

}  // namespace

Tela translate_external(const Formula& f, const FallbackOptions& opts) {
  if (opts.command_template.empty()) {
    throw fallback_error("no fallback command configured");
  }
  const std::string cmd = build_command(f, opts);
  RunResult res = run_command(cmd, opts.timeout_seconds);
  if (res.timed_out) {
    throw fallback_error("external translator timed out after " +
                         std::to_string(opts.timeout_seconds) +
                         " s: " + cmd);
  }
  if (res.exit_code != 0) {
    std::string msg = "external translator failed (exit " +
                      std::to_string(res.exit_code) + "): " + cmd;
    if (!res.err.empty()) msg += " — stderr: " + first_line(res.err);
    throw fallback_error(msg);
  }
  try {
    Tela a = parse_hoa(res.out, HoaParseOptions{/*allow_incomplete=*/true});
    a.validate();
    return a;
  } catch (const hoa_error& e) {
    throw fallback_error(std::string("external translator output rejected: ") +
                         e.what());
  }
}

}  // namespace delag
