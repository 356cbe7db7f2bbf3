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

// Chat-completion value types shared by every backend.

#ifndef ORAGENT_CHAT_H_
#define ORAGENT_CHAT_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace oragent {

enum class Role { kSystem, kUser, kAssistant };

absl::string_view RoleName(Role role);
absl::StatusOr<Role> ParseRole(absl::string_view name);

struct ChatMessage {
  Role role;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct Transcript {
  std::vector<ChatMessage> messages;

  bool operator==(const Transcript&) const = default;
};

// A transcript is submittable when it has at most one system message (first),
// the remaining roles alternate user/assistant starting and ending with user,
// and every content is nonempty.
absl::Status ValidateTranscript(const Transcript& transcript);

struct GenerationConfig {
  std::string model_id = "deepseek-reasoner";
  double temperature = 0.0;
  int max_output_tokens = 8192;
  std::chrono::seconds request_timeout{600};
};

absl::Status ValidateGenerationConfig(const GenerationConfig& config);

struct TokenUsage {
  int64_t prompt_tokens = 0;
  int64_t completion_tokens = 0;

  bool operator==(const TokenUsage&) const = default;
};

struct CompletionResult {
  std::string answer_text;  // reasoning removed
  std::optional<std::string> reasoning_text;
  std::string raw_text;
  std::optional<TokenUsage> usage;
};

// Builds a CompletionResult from raw assistant text via StripReasoning.
CompletionResult MakeCompletionResult(std::string raw_text,
                                      std::optional<TokenUsage> usage);

}  // namespace oragent

#endif  // ORAGENT_CHAT_H_
