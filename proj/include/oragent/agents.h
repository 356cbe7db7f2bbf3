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

// The Math Agent, the Code Agent, and the two repair prompts used by the
// Debugging Agent.
//
// Prompt builders are pure: equal inputs give byte-identical transcripts.
// Every transcript is [system, user]; repair prompts start a fresh
// conversation holding only the latest artifacts. Code repair never sees the
// mathematical model; math repair always does.

#ifndef ORAGENT_AGENTS_H_
#define ORAGENT_AGENTS_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oragent/artifacts.h"
#include "oragent/chat.h"
#include "oragent/corpus.h"
#include "oragent/execution.h"
#include "oragent/gateway.h"
#include "oragent/templates.h"

namespace oragent {

struct PromptContext {
  std::string solver_name = "Gurobi";
  std::string protocol_spec;  // empty means ResultProtocolSpec()
};

absl::StatusOr<Transcript> BuildMathPrompt(const ProblemInstance& problem,
                                           const PromptTemplateSet& templates);

absl::StatusOr<Transcript> BuildCodePrompt(const MathModelDoc& model,
                                           const PromptTemplateSet& templates,
                                           const PromptContext& context);

absl::StatusOr<Transcript> BuildDirectPrompt(const ProblemInstance& problem,
                                             const PromptTemplateSet& templates,
                                             const PromptContext& context);

absl::StatusOr<Transcript> BuildCodeRepairPrompt(
    const CodeArtifact& code, const ErrorReport& error,
    const PromptTemplateSet& templates, const PromptContext& context);

absl::StatusOr<Transcript> BuildMathRepairPrompt(
    const MathModelDoc& model, const CodeArtifact& code,
    const ErrorReport& error, const PromptTemplateSet& templates,
    const PromptContext& context);

// Human-readable failure description embedded as {error}. Output streams are
// tail-truncated to kStderrExcerptChars / kStdoutExcerptChars.
std::string FormatErrorForPrompt(const ErrorReport& error);

// Picks the program out of an assistant reply. Fenced blocks win, longest
// first (ties go to the earlier block). With no fence, the whole reply is
// accepted if its first non-blank line looks like Python: an import, from,
// def, class, comment or print line, or a simple assignment.
// FailedPrecondition when nothing qualifies.
absl::StatusOr<std::string> ExtractCodeBlock(absl::string_view answer);

struct AgentDeps {
  ChatBackend* gateway = nullptr;
  const PromptTemplateSet* templates = nullptr;
  PromptContext prompt;
  GenerationConfig generation;
};

// Content failures (empty model, reply without code) are FailedPrecondition;
// gateway statuses pass through unchanged.
absl::StatusOr<MathModelDoc> RunMathAgent(const ProblemInstance& problem,
                                          const AgentDeps& deps);

absl::StatusOr<CodeArtifact> RunCodeAgent(const MathModelDoc& model,
                                          const AgentDeps& deps);

absl::StatusOr<CodeArtifact> RunDirectAgent(const ProblemInstance& problem,
                                            const AgentDeps& deps);

// The returned artifact carries `attempt_index` and provenance kCodeRepair.
absl::StatusOr<CodeArtifact> RunCodeRepair(const CodeArtifact& code,
                                           const ErrorReport& error,
                                           int attempt_index,
                                           const AgentDeps& deps);

// The returned artifact carries `attempt_index` and provenance kMathRepair.
absl::StatusOr<CodeArtifact> RunMathRepair(const MathModelDoc& model,
                                           const CodeArtifact& code,
                                           const ErrorReport& error,
                                           int attempt_index,
                                           const AgentDeps& deps);

}  // namespace oragent

#endif  // ORAGENT_AGENTS_H_
