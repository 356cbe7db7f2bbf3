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

#include "oragent/debug_loop.h"

#include "absl/strings/str_cat.h"

namespace oragent {
namespace {

using Clock = std::chrono::steady_clock;

ExecutionOutcome AgentFailureOutcome(const absl::Status& status) {
  return ExecutionOutcome{
      ErrorReport{ErrorKind::kAgentError, std::nullopt, status.ToString(), ""},
      std::chrono::milliseconds(0)};
}

// A record for a problem whose front half (model or initial code) failed:
// one synthetic attempt, no execution.
RunRecord FrontHalfFailure(RunRecord record, const absl::Status& status) {
  ExecutionOutcome outcome = AgentFailureOutcome(status);
  record.final = Failed{outcome.error()};
  record.attempts.push_back(
      AttemptTrace{1, -1, std::move(outcome), RepairAction::kGiveUp});
  return record;
}

// Executes once with no repair (direct and model_code modes).
void ExecuteOnce(RunRecord& record, CodeExecutor& executor) {
  ExecutionOutcome outcome = executor.Execute(record.codes.front());
  if (outcome.succeeded()) {
    record.final = Solved{outcome.solution().objective};
    record.attempts.push_back(
        AttemptTrace{1, 0, std::move(outcome), RepairAction::kNone});
  } else {
    record.final = Failed{outcome.error()};
    record.attempts.push_back(
        AttemptTrace{1, 0, std::move(outcome), RepairAction::kGiveUp});
  }
}

absl::Status RepairLoop(RunRecord& record, const PipelineDeps& deps) {
  int current = 0;
  std::optional<ErrorReport> last_execution_error;
  std::optional<absl::Status> pending_agent_failure;

  for (int attempt = 1; attempt <= deps.max_attempts; ++attempt) {
    ExecutionOutcome outcome;
    if (pending_agent_failure.has_value()) {
      outcome = AgentFailureOutcome(*pending_agent_failure);
      pending_agent_failure.reset();
    } else {
      outcome = deps.executor->Execute(record.codes[current]);
      if (!outcome.succeeded()) last_execution_error = outcome.error();
    }

    if (outcome.succeeded()) {
      record.final = Solved{outcome.solution().objective};
      record.attempts.push_back(
          AttemptTrace{attempt, current, std::move(outcome), RepairAction::kNone});
      return absl::OkStatus();
    }

    absl::StatusOr<RepairAction> action = DecideRepair(attempt, deps.max_attempts);
    if (!action.ok()) return action.status();
    ErrorReport error = outcome.error();
    record.attempts.push_back(
        AttemptTrace{attempt, current, std::move(outcome), *action});
    if (*action == RepairAction::kGiveUp) {
      record.final = Failed{std::move(error)};
      return absl::OkStatus();
    }

    absl::StatusOr<CodeArtifact> next =
        *action == RepairAction::kMathRepair
            ? RunMathRepair(*record.math_doc, record.codes[current],
                            *last_execution_error, attempt, deps.agents)
            : RunCodeRepair(record.codes[current], *last_execution_error,
                            attempt, deps.agents);
    if (next.ok()) {
      record.codes.push_back(*std::move(next));
      current = static_cast<int>(record.codes.size()) - 1;
    } else if (IsFatalAgentError(next.status())) {
      return next.status();
    } else {
      pending_agent_failure = next.status();
    }
  }
  return absl::InternalError("repair loop ended without a verdict");
}

}  // namespace

absl::string_view PipelineModeName(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::kDirect:
      return "direct";
    case PipelineMode::kModelCode:
      return "model_code";
    case PipelineMode::kFull:
      return "full";
  }
  return "unknown";
}

absl::StatusOr<PipelineMode> ParsePipelineMode(absl::string_view name) {
  if (name == "direct") return PipelineMode::kDirect;
  if (name == "model_code" || name == "model-code") return PipelineMode::kModelCode;
  if (name == "full") return PipelineMode::kFull;
  return absl::InvalidArgumentError(absl::StrCat("unknown mode '", name, "'"));
}

absl::string_view RepairActionName(RepairAction action) {
  switch (action) {
    case RepairAction::kNone:
      return "none";
    case RepairAction::kCodeRepair:
      return "code_repair";
    case RepairAction::kMathRepair:
      return "math_repair";
    case RepairAction::kGiveUp:
      return "give_up";
  }
  return "unknown";
}

absl::StatusOr<RepairAction> ParseRepairAction(absl::string_view name) {
  for (RepairAction a : {RepairAction::kNone, RepairAction::kCodeRepair,
                         RepairAction::kMathRepair, RepairAction::kGiveUp}) {
    if (RepairActionName(a) == name) return a;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown repair action '", name, "'"));
}

absl::StatusOr<RepairAction> DecideRepair(int attempt, int max_attempts) {
  if (max_attempts < 1 || attempt < 1 || attempt > max_attempts) {
    return absl::OutOfRangeError(absl::StrCat("attempt ", attempt,
                                              " outside [1, ", max_attempts, "]"));
  }
  if (attempt == max_attempts) return RepairAction::kGiveUp;
  if (attempt == max_attempts - 1) return RepairAction::kMathRepair;
  return RepairAction::kCodeRepair;
}

bool IsFatalAgentError(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kUnauthenticated:
    case absl::StatusCode::kPermissionDenied:
    case absl::StatusCode::kDataLoss:
    case absl::StatusCode::kOutOfRange:
      return true;
    default:
      return false;
  }
}

absl::StatusOr<RunRecord> Solve(const ProblemInstance& problem,
                                PipelineMode mode, const PipelineDeps& deps) {
  if (deps.agents.gateway == nullptr || deps.agents.templates == nullptr ||
      deps.executor == nullptr) {
    return absl::InvalidArgumentError("pipeline dependencies not configured");
  }
  if (deps.max_attempts < 1) {
    return absl::InvalidArgumentError("max_attempts must be at least 1");
  }
  const Clock::time_point start = Clock::now();
  RunRecord record;
  record.problem_id = problem.id;
  record.mode = mode;
  record.model_id = deps.agents.generation.model_id;

  auto finish = [&](RunRecord r) {
    r.total_wall_time =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
    return r;
  };

  if (mode == PipelineMode::kDirect) {
    absl::StatusOr<CodeArtifact> code = RunDirectAgent(problem, deps.agents);
    if (!code.ok()) {
      if (IsFatalAgentError(code.status())) return code.status();
      return finish(FrontHalfFailure(std::move(record), code.status()));
    }
    record.codes.push_back(*std::move(code));
    ExecuteOnce(record, *deps.executor);
    return finish(std::move(record));
  }

  absl::StatusOr<MathModelDoc> model = RunMathAgent(problem, deps.agents);
  if (!model.ok()) {
    if (IsFatalAgentError(model.status())) return model.status();
    return finish(FrontHalfFailure(std::move(record), model.status()));
  }
  record.math_doc = *std::move(model);

  absl::StatusOr<CodeArtifact> code = RunCodeAgent(*record.math_doc, deps.agents);
  if (!code.ok()) {
    if (IsFatalAgentError(code.status())) return code.status();
    return finish(FrontHalfFailure(std::move(record), code.status()));
  }
  record.codes.push_back(*std::move(code));

  if (mode == PipelineMode::kModelCode) {
    ExecuteOnce(record, *deps.executor);
    return finish(std::move(record));
  }
  if (absl::Status s = RepairLoop(record, deps); !s.ok()) return s;
  return finish(std::move(record));
}

}  // namespace oragent
