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

#include "oragent/chat.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "oragent/reasoning.h"

namespace oragent {

absl::string_view RoleName(Role role) {
  switch (role) {
    case Role::kSystem:
      return "system";
    case Role::kUser:
      return "user";
    case Role::kAssistant:
      return "assistant";
  }
  return "unknown";
}

absl::StatusOr<Role> ParseRole(absl::string_view name) {
  if (name == "system") return Role::kSystem;
  if (name == "user") return Role::kUser;
  if (name == "assistant") return Role::kAssistant;
  return absl::InvalidArgumentError(absl::StrCat("unknown role '", name, "'"));
}

absl::Status ValidateTranscript(const Transcript& transcript) {
  const auto& messages = transcript.messages;
  size_t i = 0;
  if (!messages.empty() && messages[0].role == Role::kSystem) i = 1;
  if (i == messages.size()) {
    return absl::InvalidArgumentError("transcript has no user message");
  }
  for (size_t k = 0; k < messages.size(); ++k) {
    if (messages[k].content.empty()) {
      return absl::InvalidArgumentError(
          absl::StrCat("message ", k, " has empty content"));
    }
  }
  for (size_t k = i; k < messages.size(); ++k) {
    const Role expected = (k - i) % 2 == 0 ? Role::kUser : Role::kAssistant;
    if (messages[k].role != expected) {
      return absl::InvalidArgumentError(absl::StrCat(
          "message ", k, " has role ", RoleName(messages[k].role),
          ", expected ", RoleName(expected)));
    }
  }
  if (messages.back().role != Role::kUser) {
    return absl::InvalidArgumentError("transcript must end with a user message");
  }
  return absl::OkStatus();
}

absl::Status ValidateGenerationConfig(const GenerationConfig& config) {
  if (config.model_id.empty()) {
    return absl::InvalidArgumentError("model id is empty");
  }
  if (!std::isfinite(config.temperature) || config.temperature < 0) {
    return absl::InvalidArgumentError("temperature must be finite and >= 0");
  }
  if (config.max_output_tokens <= 0) {
    return absl::InvalidArgumentError("max output tokens must be positive");
  }
  if (config.request_timeout.count() <= 0) {
    return absl::InvalidArgumentError("request timeout must be positive");
  }
  return absl::OkStatus();
}

CompletionResult MakeCompletionResult(std::string raw_text,
                                      std::optional<TokenUsage> usage) {
  StrippedText stripped = StripReasoning(raw_text);
  CompletionResult result;
  result.answer_text = std::move(stripped.answer);
  result.reasoning_text = std::move(stripped.reasoning);
  result.raw_text = std::move(raw_text);
  result.usage = usage;
  return result;
}

}  // namespace oragent
