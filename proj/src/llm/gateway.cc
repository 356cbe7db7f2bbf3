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

#include "oragent/gateway.h"

#include <charconv>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "oragent/file_util.h"

namespace oragent {
namespace {

// Shortest round-trip decimal; identical on every IEEE-754 platform.
std::string CanonicalDouble(double value) {
  if (value == 0.0) value = 0.0;  // fold -0
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

void AppendField(std::string& out, absl::string_view tag,
                 absl::string_view value) {
  absl::StrAppend(&out, tag, " ", value.size(), ":", value, "\n");
}

}  // namespace

std::string CanonicalTranscriptText(const Transcript& transcript,
                                    absl::string_view model_id,
                                    double temperature) {
  std::string text = "oragent-transcript-v1\n";
  AppendField(text, "model", model_id);
  AppendField(text, "temperature", CanonicalDouble(temperature));
  for (const ChatMessage& m : transcript.messages) {
    AppendField(text, RoleName(m.role), m.content);
  }
  return text;
}

std::string TranscriptKey(const Transcript& transcript,
                          const GenerationConfig& config) {
  return Sha256Hex(
      CanonicalTranscriptText(transcript, config.model_id, config.temperature));
}

bool IsReplayMiss(const absl::Status& status) {
  return status.code() == absl::StatusCode::kNotFound &&
         absl::StartsWith(status.message(), "replay miss");
}

absl::StatusOr<CompletionResult> ReplayBackend::Complete(
    const Transcript& transcript, const GenerationConfig& config) {
  if (absl::Status valid = ValidateTranscript(transcript); !valid.ok()) {
    return valid;
  }
  const std::string key = TranscriptKey(transcript, config);
  absl::StatusOr<StoredExchange> exchange = source_.Lookup(key);
  if (!exchange.ok()) return exchange.status();
  if (mirror_ != nullptr && mirror_->dir() != source_.dir()) {
    if (absl::Status s = mirror_->Put(*exchange); !s.ok()) return s;
  }
  return MakeCompletionResult(std::move(exchange->raw_text), exchange->usage);
}

absl::StatusOr<CompletionResult> RecordingBackend::Complete(
    const Transcript& transcript, const GenerationConfig& config) {
  absl::StatusOr<CompletionResult> result = inner_.Complete(transcript, config);
  if (!result.ok()) return result;
  StoredExchange exchange;
  exchange.key = TranscriptKey(transcript, config);
  exchange.model_id = config.model_id;
  exchange.temperature = config.temperature;
  exchange.request = transcript;
  exchange.raw_text = result->raw_text;
  exchange.usage = result->usage;
  if (absl::Status s = store_.Put(exchange); !s.ok()) return s;
  return result;
}

}  // namespace oragent
