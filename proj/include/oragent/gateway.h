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

// The chat-completion gateway: one interface, three backends.
//
//   LiveBackend       OpenAI-compatible HTTP(S) endpoint (live_backend.h).
//   RecordingBackend  forwards to another backend and persists every
//                     exchange into a ReplayStore.
//   ReplayBackend     serves stored exchanges by transcript key; a miss is a
//                     hard error.
//
// All backends are safe to share between concurrent pipeline workers.

#ifndef ORAGENT_GATEWAY_H_
#define ORAGENT_GATEWAY_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oragent/chat.h"
#include "oragent/replay_store.h"

namespace oragent {

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  // Returns the assistant reply for `transcript`, which must satisfy
  // ValidateTranscript.
  virtual absl::StatusOr<CompletionResult> Complete(
      const Transcript& transcript, const GenerationConfig& config) = 0;
};

// Deterministic content hash over roles, contents, model id and temperature.
// Lowercase hex SHA-256; stable across platforms and processes.
std::string TranscriptKey(const Transcript& transcript,
                          const GenerationConfig& config);

// The exact bytes hashed by TranscriptKey. Exposed for diagnostics.
std::string CanonicalTranscriptText(const Transcript& transcript,
                                    absl::string_view model_id,
                                    double temperature);

bool IsReplayMiss(const absl::Status& status);

class ReplayBackend : public ChatBackend {
 public:
  // Entries served from `source` are copied into `mirror` when it is non-null,
  // which lets a replayed run directory carry its own store.
  explicit ReplayBackend(const ReplayStore& source,
                         ReplayStore* mirror = nullptr)
      : source_(source), mirror_(mirror) {}

  absl::StatusOr<CompletionResult> Complete(
      const Transcript& transcript, const GenerationConfig& config) override;

 private:
  const ReplayStore& source_;
  ReplayStore* mirror_;
};

class RecordingBackend : public ChatBackend {
 public:
  RecordingBackend(ChatBackend& inner, ReplayStore& store)
      : inner_(inner), store_(store) {}

  absl::StatusOr<CompletionResult> Complete(
      const Transcript& transcript, const GenerationConfig& config) override;

 private:
  ChatBackend& inner_;
  ReplayStore& store_;
};

}  // namespace oragent

#endif  // ORAGENT_GATEWAY_H_
