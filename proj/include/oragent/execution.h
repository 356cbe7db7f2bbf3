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

// Result of executing one generated program: a solution, or bottom plus an
// error report.

#ifndef ORAGENT_EXECUTION_H_
#define ORAGENT_EXECUTION_H_

#include <chrono>
#include <optional>
#include <string>
#include <variant>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace oragent {

enum class ErrorKind {
  kSpawnFailure,
  kNonzeroExit,
  kTimeout,
  kProtocolMissing,
  kModelInfeasible,
  kModelUnbounded,
  // Synthetic: an agent call failed (gateway error, reply without code), so
  // the attempt was consumed without executing anything.
  kAgentError,
};

absl::string_view ErrorKindName(ErrorKind kind);
absl::StatusOr<ErrorKind> ParseErrorKind(absl::string_view name);

// True for kinds where the program ran to a solver verdict (infeasible or
// unbounded). Everything else except success is a failure to execute.
bool ReachedSolverVerdict(ErrorKind kind);

// kTimeout => no exit_code; kNonzeroExit => exit_code present and nonzero.
struct ErrorReport {
  ErrorKind kind;
  std::optional<int> exit_code;
  std::string stderr_excerpt;
  std::string stdout_excerpt;

  bool operator==(const ErrorReport&) const = default;
};

struct Solution {
  double objective;
  std::string status_line;  // the marker line as printed

  bool operator==(const Solution&) const = default;
};

struct ExecutionOutcome {
  std::variant<Solution, ErrorReport> result;
  std::chrono::milliseconds wall_time{0};

  bool succeeded() const { return std::holds_alternative<Solution>(result); }
  const Solution& solution() const { return std::get<Solution>(result); }
  const ErrorReport& error() const { return std::get<ErrorReport>(result); }
};

// Excerpt budgets for error reports and repair prompts.
inline constexpr size_t kStderrExcerptChars = 4000;
inline constexpr size_t kStdoutExcerptChars = 1000;

// The last `max_bytes` bytes of `text`, moved forward to a UTF-8 boundary.
std::string TailExcerpt(absl::string_view text, size_t max_bytes);

}  // namespace oragent

#endif  // ORAGENT_EXECUTION_H_
