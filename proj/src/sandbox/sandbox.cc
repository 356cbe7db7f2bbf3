// Copyright 2026 The oragent Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oragent/sandbox.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <system_error>
#include <utility>
#include <vector>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_split.h"
#include "oragent/result_protocol.h"

extern char** environ;

namespace oragent {
namespace {

using Clock = std::chrono::steady_clock;

// Keeps only the last `limit` bytes appended.
class TailBuffer {
 public:
  explicit TailBuffer(size_t limit) : limit_(limit) {}

  void Append(const char* data, size_t n) {
    data_.append(data, n);
    if (data_.size() > 2 * limit_) data_.erase(0, data_.size() - limit_);
  }

  std::string Take() {
    if (data_.size() > limit_) data_.erase(0, data_.size() - limit_);
    return std::move(data_);
  }

 private:
  size_t limit_;
  std::string data_;
};

class ScopedFd {
 public:
  explicit ScopedFd(int fd = -1) : fd_(fd) {}
  ScopedFd(const ScopedFd&) = delete;
  ScopedFd& operator=(const ScopedFd&) = delete;
  ~ScopedFd() { Reset(); }

  int get() const { return fd_; }
  void Reset(int fd = -1) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = fd;
  }

 private:
  int fd_;
};

struct Pipe {
  ScopedFd read_end;
  ScopedFd write_end;
};

bool MakePipe(Pipe& p) {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) return false;
  p.read_end.Reset(fds[0]);
  p.write_end.Reset(fds[1]);
  return true;
}

// Several rounds because members may be forking while we kill.
void KillGroup(pid_t pgid) {
  for (int i = 0; i < 3; ++i) {
    if (::kill(-pgid, SIGKILL) != 0 && errno == ESRCH) return;
  }
}

std::optional<std::string> ResolveOnPath(const std::string& command) {
  if (command.empty()) return std::nullopt;
  if (command.find('/') != std::string::npos) {
    if (::access(command.c_str(), X_OK) == 0) return command;
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  if (path == nullptr) return std::nullopt;
  for (absl::string_view dir : absl::StrSplit(path, ':')) {
    std::string candidate = absl::StrCat(dir.empty() ? "." : dir, "/", command);
    struct stat st;
    if (::stat(candidate.c_str(), &st) == 0 && S_ISREG(st.st_mode) &&
        ::access(candidate.c_str(), X_OK) == 0) {
      return candidate;
    }
  }
  return std::nullopt;
}

std::vector<std::string> ChildEnvironment(
    const std::optional<std::filesystem::path>& runtime) {
  std::vector<std::string> env;
  bool replaced = false;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    std::string entry(*e);
    if (runtime.has_value() && absl::StartsWith(entry, "PYTHONPATH=")) {
      entry = absl::StrCat("PYTHONPATH=", runtime->string(), ":",
                           entry.substr(std::strlen("PYTHONPATH=")));
      replaced = true;
    }
    env.push_back(std::move(entry));
  }
  if (runtime.has_value() && !replaced) {
    env.push_back(absl::StrCat("PYTHONPATH=", runtime->string()));
  }
  return env;
}

std::vector<char*> CStringArray(std::vector<std::string>& strings) {
  std::vector<char*> out;
  out.reserve(strings.size() + 1);
  for (std::string& s : strings) out.push_back(s.data());
  out.push_back(nullptr);
  return out;
}

ExecutionOutcome SpawnFailure(std::string message, Clock::time_point start) {
  return ExecutionOutcome{
      ErrorReport{ErrorKind::kSpawnFailure, std::nullopt, std::move(message), ""},
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)};
}

}  // namespace

Sandbox::Sandbox(SandboxConfig config, std::function<void(absl::string_view)> log)
    : config_(std::move(config)), log_(std::move(log)) {}

absl::Status Sandbox::CheckInterpreter() const {
  if (config_.interpreter.empty()) {
    return absl::InvalidArgumentError("interpreter command is empty");
  }
  if (config_.limits.wall_timeout.count() <= 0) {
    return absl::InvalidArgumentError("sandbox timeout must be positive");
  }
  if (!ResolveOnPath(config_.interpreter.front()).has_value()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "interpreter '", config_.interpreter.front(), "' not found on PATH"));
  }
  return absl::OkStatus();
}

ExecutionOutcome Sandbox::Execute(const CodeArtifact& code) {
  const Clock::time_point start = Clock::now();
  if (config_.interpreter.empty()) {
    return SpawnFailure("interpreter command is empty", start);
  }

  std::string dir_template =
      (std::filesystem::temp_directory_path() / "oragent-XXXXXX").string();
  if (::mkdtemp(dir_template.data()) == nullptr) {
    return SpawnFailure(
        absl::StrCat("cannot create working directory: ", std::strerror(errno)),
        start);
  }
  const std::filesystem::path workdir = dir_template;
  auto cleanup = [&] {
    if (config_.limits.keep_artifacts) {
      if (log_) log_(absl::StrCat("[oragent] kept sandbox dir ", workdir.string()));
      return;
    }
    std::error_code ec;
    std::filesystem::remove_all(workdir, ec);
  };

  {
    std::ofstream out(workdir / config_.source_filename, std::ios::binary);
    out << code.source;
    if (!out) {
      cleanup();
      return SpawnFailure("cannot write program file", start);
    }
  }

  std::vector<std::string> args = config_.interpreter;
  args.push_back(config_.source_filename);
  std::vector<std::string> env = ChildEnvironment(config_.fixture_runtime);
  std::vector<char*> argv = CStringArray(args);
  std::vector<char*> envp = CStringArray(env);
  const std::string workdir_str = workdir.string();

  Pipe out_pipe, err_pipe, exec_pipe;
  if (!MakePipe(out_pipe) || !MakePipe(err_pipe) || !MakePipe(exec_pipe)) {
    cleanup();
    return SpawnFailure(absl::StrCat("pipe: ", std::strerror(errno)), start);
  }

  const pid_t pid = ::fork();
  if (pid < 0) {
    cleanup();
    return SpawnFailure(absl::StrCat("fork: ", std::strerror(errno)), start);
  }
  if (pid == 0) {
    // Child: async-signal-safe calls only.
    ::setpgid(0, 0);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (::chdir(workdir_str.c_str()) == 0 && devnull >= 0 &&
        ::dup2(devnull, STDIN_FILENO) >= 0 &&
        ::dup2(out_pipe.write_end.get(), STDOUT_FILENO) >= 0 &&
        ::dup2(err_pipe.write_end.get(), STDERR_FILENO) >= 0) {
      ::execvpe(argv[0], argv.data(), envp.data());
    }
    int error = errno;
    ssize_t ignored = ::write(exec_pipe.write_end.get(), &error, sizeof(error));
    (void)ignored;
    ::_exit(127);
  }

  ::setpgid(pid, pid);  // races the child's own call; either wins
  out_pipe.write_end.Reset();
  err_pipe.write_end.Reset();
  exec_pipe.write_end.Reset();

  int exec_errno = 0;
  ssize_t n;
  do {
    n = ::read(exec_pipe.read_end.get(), &exec_errno, sizeof(exec_errno));
  } while (n < 0 && errno == EINTR);
  if (n == static_cast<ssize_t>(sizeof(exec_errno))) {
    int ignored_status;
    ::waitpid(pid, &ignored_status, 0);
    cleanup();
    return SpawnFailure(absl::StrCat("cannot execute '", args.front(),
                                     "': ", std::strerror(exec_errno)),
                        start);
  }

  ::fcntl(out_pipe.read_end.get(), F_SETFL, O_NONBLOCK);
  ::fcntl(err_pipe.read_end.get(), F_SETFL, O_NONBLOCK);
  TailBuffer stdout_buf(config_.limits.max_captured_output);
  TailBuffer stderr_buf(config_.limits.max_captured_output);

  const Clock::time_point deadline = start + config_.limits.wall_timeout;
  Clock::time_point drain_deadline = Clock::time_point::max();
  bool out_open = true, err_open = true, exited = false, timed_out = false;
  int wait_status = 0;
  char chunk[8192];

  for (;;) {
    if (!exited && ::waitpid(pid, &wait_status, WNOHANG) == pid) {
      exited = true;
      KillGroup(pid);  // stragglers would hold the pipes open
      drain_deadline = Clock::now() + std::chrono::seconds(1);
    }
    if (exited && !out_open && !err_open) break;
    const Clock::time_point now = Clock::now();
    if (!exited && now >= deadline) {
      timed_out = true;
      KillGroup(pid);
      ::waitpid(pid, &wait_status, 0);
      exited = true;
      drain_deadline = now + std::chrono::seconds(1);
    }
    if (exited && now >= drain_deadline) break;

    pollfd fds[2];
    int count = 0;
    if (out_open) fds[count++] = {out_pipe.read_end.get(), POLLIN, 0};
    if (err_open) fds[count++] = {err_pipe.read_end.get(), POLLIN, 0};
    ::poll(count > 0 ? fds : nullptr, count, 20);
    for (int i = 0; i < count; ++i) {
      if ((fds[i].revents & (POLLIN | POLLHUP | POLLERR)) == 0) continue;
      const bool is_out = fds[i].fd == out_pipe.read_end.get();
      for (;;) {
        ssize_t got = ::read(fds[i].fd, chunk, sizeof(chunk));
        if (got > 0) {
          (is_out ? stdout_buf : stderr_buf).Append(chunk, static_cast<size_t>(got));
          continue;
        }
        if (got == 0) (is_out ? out_open : err_open) = false;
        break;  // EOF, EAGAIN or error
      }
    }
  }
  KillGroup(pid);
  const auto wall_time =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
  cleanup();

  // Tracebacks name the program by absolute path; drop the random directory
  // so error reports, and the repair prompts built from them, are stable.
  const std::vector<std::pair<std::string, std::string>> scrub = {
      {workdir_str + "/", ""}, {workdir_str, "."}};
  std::string captured_out = absl::StrReplaceAll(stdout_buf.Take(), scrub);
  std::string captured_err = absl::StrReplaceAll(stderr_buf.Take(), scrub);
  std::string err_excerpt = TailExcerpt(captured_err, kStderrExcerptChars);
  std::string out_excerpt = TailExcerpt(captured_out, kStdoutExcerptChars);

  if (timed_out) {
    return ExecutionOutcome{ErrorReport{ErrorKind::kTimeout, std::nullopt,
                                        std::move(err_excerpt),
                                        std::move(out_excerpt)},
                            wall_time};
  }
  if (WIFSIGNALED(wait_status)) {
    const int sig = WTERMSIG(wait_status);
    absl::StrAppend(&err_excerpt, err_excerpt.empty() ? "" : "\n",
                    "[terminated by signal ", sig, "]");
    return ExecutionOutcome{
        ErrorReport{ErrorKind::kNonzeroExit, 128 + sig,
                    TailExcerpt(err_excerpt, kStderrExcerptChars),
                    std::move(out_excerpt)},
        wall_time};
  }
  const int exit_code = WEXITSTATUS(wait_status);
  if (exit_code != 0) {
    return ExecutionOutcome{ErrorReport{ErrorKind::kNonzeroExit, exit_code,
                                        std::move(err_excerpt),
                                        std::move(out_excerpt)},
                            wall_time};
  }
  std::variant<Solution, ErrorReport> parsed = ParseResult(captured_out);
  if (auto* report = std::get_if<ErrorReport>(&parsed)) {
    report->exit_code = 0;
    report->stderr_excerpt = std::move(err_excerpt);
  }
  return ExecutionOutcome{std::move(parsed), wall_time};
}

}  // namespace oragent
