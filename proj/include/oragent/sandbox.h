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

// Runs generated programs in a child process.
//
// Each execution gets a fresh temporary directory holding the program, runs
// the configured interpreter there in its own process group, and captures the
// tail of stdout/stderr. On timeout, and after a normal exit, the whole
// process group is killed. This is process isolation only: no namespaces,
// seccomp or network filtering. Run untrusted code inside a container or VM.

#ifndef ORAGENT_SANDBOX_H_
#define ORAGENT_SANDBOX_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/string_view.h"
#include "oragent/artifacts.h"
#include "oragent/execution.h"

namespace oragent {

struct SandboxLimits {
  std::chrono::milliseconds wall_timeout{std::chrono::seconds(60)};
  // Per stream; the tail is kept so a final marker line survives capping.
  size_t max_captured_output = size_t{1} << 20;
  bool keep_artifacts = false;
};

struct SandboxConfig {
  // The program path is appended as the last argument.
  std::vector<std::string> interpreter{"python3"};
  std::string source_filename = "main.py";
  // Prepended to PYTHONPATH in the child when set.
  std::optional<std::filesystem::path> fixture_runtime;
  SandboxLimits limits;
};

// The execution operator. Implementations must be reentrant.
class CodeExecutor {
 public:
  virtual ~CodeExecutor() = default;
  virtual ExecutionOutcome Execute(const CodeArtifact& code) = 0;
};

class Sandbox : public CodeExecutor {
 public:
  explicit Sandbox(SandboxConfig config,
                   std::function<void(absl::string_view)> log = nullptr);

  ExecutionOutcome Execute(const CodeArtifact& code) override;

  // Fails when the interpreter command cannot be resolved on PATH.
  absl::Status CheckInterpreter() const;

  const SandboxConfig& config() const { return config_; }

  // Time allowed after the wall timeout for killing and reaping.
  static constexpr std::chrono::seconds kKillGrace{5};

 private:
  SandboxConfig config_;
  std::function<void(absl::string_view)> log_;
};

}  // namespace oragent

#endif  // ORAGENT_SANDBOX_H_
