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

// The per-problem pipeline and its staged repair loop.
//
// Mode kFull:
//   model <- math agent(problem); code <- code agent(model)
//   for attempt = 1..max_attempts:
//     execute code; on success return the objective
//     attempt == max_attempts      -> give up
//     attempt == max_attempts - 1  -> code <- math repair(model, code, error)
//     otherwise                    -> code <- code repair(code, error)
//
// Mode kModelCode runs the same front half and executes once. Mode kDirect
// asks for code straight from the problem text and executes once.
//
// A repair call that fails (gateway error, reply without code) consumes the
// next attempt: nothing is executed, the previous program is kept, and the
// attempt is recorded as ErrorKind::kAgentError. Repairs always use the last
// real execution error. Fatal statuses (see IsFatalAgentError) abort instead.

#ifndef ORAGENT_DEBUG_LOOP_H_
#define ORAGENT_DEBUG_LOOP_H_

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oragent/agents.h"
#include "oragent/artifacts.h"
#include "oragent/corpus.h"
#include "oragent/execution.h"
#include "oragent/sandbox.h"

namespace oragent {

enum class PipelineMode { kDirect, kModelCode, kFull };

absl::string_view PipelineModeName(PipelineMode mode);  // direct|model_code|full
// Accepts "model-code" as well as "model_code".
absl::StatusOr<PipelineMode> ParsePipelineMode(absl::string_view name);

enum class RepairAction { kNone, kCodeRepair, kMathRepair, kGiveUp };

absl::string_view RepairActionName(RepairAction action);
absl::StatusOr<RepairAction> ParseRepairAction(absl::string_view name);

// What follows a failed `attempt` (1-based). Never returns kNone.
absl::StatusOr<RepairAction> DecideRepair(int attempt, int max_attempts);

struct AttemptTrace {
  int attempt = 0;
  int code_ref = -1;  // index into RunRecord::codes; -1 when no code existed
  ExecutionOutcome outcome;
  RepairAction repair_applied_after = RepairAction::kNone;  // kNone iff success
};

struct Solved {
  double objective;
  bool operator==(const Solved&) const = default;
};
struct Failed {
  ErrorReport error;  // the last attempt's error
  bool operator==(const Failed&) const = default;
};

struct RunRecord {
  std::string problem_id;
  PipelineMode mode = PipelineMode::kFull;
  std::string model_id;
  std::optional<MathModelDoc> math_doc;  // absent in kDirect
  std::vector<CodeArtifact> codes;       // every program produced, in order
  std::vector<AttemptTrace> attempts;    // nonempty, at most max_attempts
  std::variant<Solved, Failed> final{Failed{}};
  std::chrono::milliseconds total_wall_time{0};

  bool solved() const { return std::holds_alternative<Solved>(final); }
};

struct PipelineDeps {
  AgentDeps agents;
  CodeExecutor* executor = nullptr;
  int max_attempts = 5;
};

// Statuses that abort a sweep rather than fail one attempt: replay misses,
// bad configuration or templates, rejected credentials, corrupt stores.
bool IsFatalAgentError(const absl::Status& status);

absl::StatusOr<RunRecord> Solve(const ProblemInstance& problem,
                                PipelineMode mode, const PipelineDeps& deps);

}  // namespace oragent

#endif  // ORAGENT_DEBUG_LOOP_H_
