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

#include "oragent/agents.h"

#include <regex>
#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "oragent/result_protocol.h"

namespace oragent {
namespace {

constexpr absl::string_view kFence = "```";

std::string ProtocolSpec(const PromptContext& context) {
  return context.protocol_spec.empty() ? ResultProtocolSpec()
                                       : context.protocol_spec;
}

absl::StatusOr<Transcript> TwoMessagePrompt(absl::string_view system_template,
                                            absl::string_view user_template,
                                            const TemplateBindings& bindings) {
  absl::StatusOr<std::string> system = RenderTemplate(system_template, {});
  if (!system.ok()) return system.status();
  absl::StatusOr<std::string> user = RenderTemplate(user_template, bindings);
  if (!user.ok()) return user.status();
  Transcript transcript;
  if (!system->empty()) {
    transcript.messages.push_back({Role::kSystem, *std::move(system)});
  }
  transcript.messages.push_back({Role::kUser, *std::move(user)});
  return transcript;
}

absl::string_view TrimBlock(absl::string_view block) {
  while (!block.empty() && (block.front() == '\n' || block.front() == '\r')) {
    block.remove_prefix(1);
  }
  while (!block.empty() && absl::ascii_isspace(block.back())) {
    block.remove_suffix(1);
  }
  return block;
}

bool LooksLikeProgram(absl::string_view text) {
  absl::string_view first = absl::StripLeadingAsciiWhitespace(text);
  first = first.substr(0, first.find('\n'));
  for (absl::string_view prefix :
       {"import ", "from ", "def ", "class ", "#", "print(", "@"}) {
    if (absl::StartsWith(first, prefix)) return true;
  }
  static const std::regex* assignment = new std::regex(
      R"(^[A-Za-z_][A-Za-z0-9_]*(\s*,\s*[A-Za-z_][A-Za-z0-9_]*)*\s*=[^=].*)");
  return std::regex_match(first.begin(), first.end(), *assignment);
}

absl::StatusOr<CodeArtifact> RequestCode(const Transcript& transcript,
                                         std::string problem_id,
                                         int attempt_index,
                                         Provenance provenance,
                                         const AgentDeps& deps) {
  absl::StatusOr<CompletionResult> reply =
      deps.gateway->Complete(transcript, deps.generation);
  if (!reply.ok()) return reply.status();
  absl::StatusOr<std::string> source = ExtractCodeBlock(reply->answer_text);
  if (!source.ok()) return source.status();
  return CodeArtifact{std::move(problem_id), *std::move(source), attempt_index,
                      provenance, TranscriptKey(transcript, deps.generation)};
}

}  // namespace

absl::StatusOr<Transcript> BuildMathPrompt(const ProblemInstance& problem,
                                           const PromptTemplateSet& templates) {
  return TwoMessagePrompt(templates.system_math, templates.user_math,
                          {{"problem", problem.description}});
}

absl::StatusOr<Transcript> BuildCodePrompt(const MathModelDoc& model,
                                           const PromptTemplateSet& templates,
                                           const PromptContext& context) {
  return TwoMessagePrompt(templates.system_code, templates.user_code,
                          {{"math_model", model.body},
                           {"solver_name", context.solver_name},
                           {"protocol_spec", ProtocolSpec(context)}});
}

absl::StatusOr<Transcript> BuildDirectPrompt(const ProblemInstance& problem,
                                             const PromptTemplateSet& templates,
                                             const PromptContext& context) {
  return TwoMessagePrompt(templates.system_code, templates.user_direct,
                          {{"problem", problem.description},
                           {"solver_name", context.solver_name},
                           {"protocol_spec", ProtocolSpec(context)}});
}

absl::StatusOr<Transcript> BuildCodeRepairPrompt(
    const CodeArtifact& code, const ErrorReport& error,
    const PromptTemplateSet& templates, const PromptContext& context) {
  return TwoMessagePrompt(templates.system_code, templates.user_code_repair,
                          {{"code", code.source},
                           {"error", FormatErrorForPrompt(error)},
                           {"solver_name", context.solver_name},
                           {"protocol_spec", ProtocolSpec(context)}});
}

absl::StatusOr<Transcript> BuildMathRepairPrompt(
    const MathModelDoc& model, const CodeArtifact& code,
    const ErrorReport& error, const PromptTemplateSet& templates,
    const PromptContext& context) {
  return TwoMessagePrompt(templates.system_code, templates.user_math_repair,
                          {{"math_model", model.body},
                           {"code", code.source},
                           {"error", FormatErrorForPrompt(error)},
                           {"solver_name", context.solver_name},
                           {"protocol_spec", ProtocolSpec(context)}});
}

std::string FormatErrorForPrompt(const ErrorReport& error) {
  std::string text;
  switch (error.kind) {
    case ErrorKind::kSpawnFailure:
      text = "The program could not be started.";
      break;
    case ErrorKind::kNonzeroExit:
      text = absl::StrCat("The program exited with code ",
                          error.exit_code.value_or(1), ".");
      break;
    case ErrorKind::kTimeout:
      text = "The program was stopped after exceeding the time limit.";
      break;
    case ErrorKind::kProtocolMissing:
      text = "The program finished but printed no OPTIMAL_VALUE= or "
             "MODEL_STATUS= result line.";
      break;
    case ErrorKind::kModelInfeasible:
      text = "The solver reported that the model is infeasible.";
      break;
    case ErrorKind::kModelUnbounded:
      text = "The solver reported that the model is unbounded.";
      break;
    case ErrorKind::kAgentError:
      text = "The previous repair request failed.";
      break;
  }
  if (!error.stderr_excerpt.empty()) {
    absl::StrAppend(&text, "\nStandard error (last ", kStderrExcerptChars,
                    " characters):\n",
                    TailExcerpt(error.stderr_excerpt, kStderrExcerptChars));
  }
  if (!error.stdout_excerpt.empty()) {
    absl::StrAppend(&text, "\nStandard output (last ", kStdoutExcerptChars,
                    " characters):\n",
                    TailExcerpt(error.stdout_excerpt, kStdoutExcerptChars));
  }
  return text;
}

absl::StatusOr<std::string> ExtractCodeBlock(absl::string_view answer) {
  std::vector<absl::string_view> blocks;
  bool saw_fence = false;
  size_t pos = 0;
  for (;;) {
    const size_t open = answer.find(kFence, pos);
    if (open == absl::string_view::npos) break;
    saw_fence = true;
    const size_t after = open + kFence.size();
    const size_t close = answer.find(kFence, after);
    const size_t newline = answer.find('\n', after);
    // The rest of the opening line is the info string ("python").
    const size_t body =
        (newline != absl::string_view::npos &&
         (close == absl::string_view::npos || newline < close))
            ? newline + 1
            : after;
    if (close == absl::string_view::npos) {
      blocks.push_back(TrimBlock(answer.substr(body)));  // truncated reply
      break;
    }
    blocks.push_back(TrimBlock(answer.substr(body, close - body)));
    pos = close + kFence.size();
  }

  absl::string_view best;
  for (absl::string_view block : blocks) {
    if (block.size() > best.size()) best = block;
  }
  if (!best.empty()) return std::string(best);
  if (!saw_fence && LooksLikeProgram(answer)) {
    return std::string(TrimBlock(answer));
  }
  return absl::FailedPreconditionError("reply contains no code block");
}

absl::StatusOr<MathModelDoc> RunMathAgent(const ProblemInstance& problem,
                                          const AgentDeps& deps) {
  absl::StatusOr<Transcript> transcript =
      BuildMathPrompt(problem, *deps.templates);
  if (!transcript.ok()) return transcript.status();
  absl::StatusOr<CompletionResult> reply =
      deps.gateway->Complete(*transcript, deps.generation);
  if (!reply.ok()) return reply.status();
  if (absl::StripAsciiWhitespace(reply->answer_text).empty()) {
    return absl::FailedPreconditionError("math agent returned an empty model");
  }
  return MathModelDoc{problem.id, std::move(reply->answer_text),
                      TranscriptKey(*transcript, deps.generation)};
}

absl::StatusOr<CodeArtifact> RunCodeAgent(const MathModelDoc& model,
                                          const AgentDeps& deps) {
  absl::StatusOr<Transcript> transcript =
      BuildCodePrompt(model, *deps.templates, deps.prompt);
  if (!transcript.ok()) return transcript.status();
  return RequestCode(*transcript, model.problem_id, 0, Provenance::kInitial, deps);
}

absl::StatusOr<CodeArtifact> RunDirectAgent(const ProblemInstance& problem,
                                            const AgentDeps& deps) {
  absl::StatusOr<Transcript> transcript =
      BuildDirectPrompt(problem, *deps.templates, deps.prompt);
  if (!transcript.ok()) return transcript.status();
  return RequestCode(*transcript, problem.id, 0, Provenance::kInitial, deps);
}

absl::StatusOr<CodeArtifact> RunCodeRepair(const CodeArtifact& code,
                                           const ErrorReport& error,
                                           int attempt_index,
                                           const AgentDeps& deps) {
  absl::StatusOr<Transcript> transcript =
      BuildCodeRepairPrompt(code, error, *deps.templates, deps.prompt);
  if (!transcript.ok()) return transcript.status();
  return RequestCode(*transcript, code.problem_id, attempt_index,
                     Provenance::kCodeRepair, deps);
}

absl::StatusOr<CodeArtifact> RunMathRepair(const MathModelDoc& model,
                                           const CodeArtifact& code,
                                           const ErrorReport& error,
                                           int attempt_index,
                                           const AgentDeps& deps) {
  absl::StatusOr<Transcript> transcript =
      BuildMathRepairPrompt(model, code, error, *deps.templates, deps.prompt);
  if (!transcript.ok()) return transcript.status();
  return RequestCode(*transcript, code.problem_id, attempt_index,
                     Provenance::kMathRepair, deps);
}

}  // namespace oragent
