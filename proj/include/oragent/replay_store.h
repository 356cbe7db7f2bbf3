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

// On-disk store of recorded chat exchanges.
//
// One directory, one file per exchange named "<key>.json" where <key> is the
// transcript key. Files are pretty-printed JSON with a fixed key order:
//
//   {
//     "format": "oragent-replay-v1",
//     "key": "<64 hex>",
//     "request": {"model": ..., "temperature": ..., "messages": [...]},
//     "response": {"raw_text": ..., "usage": {...} | null},
//     "response_sha256": "<64 hex of raw_text>"
//   }
//
// Writes are atomic (rename), so concurrent writers of the same key are
// last-write-wins over identical payloads.

#ifndef ORAGENT_REPLAY_STORE_H_
#define ORAGENT_REPLAY_STORE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oragent/chat.h"

namespace oragent {

struct StoredExchange {
  std::string key;
  std::string model_id;
  double temperature = 0.0;
  Transcript request;
  std::string raw_text;
  std::optional<TokenUsage> usage;
};

std::string SerializeExchange(const StoredExchange& exchange);
absl::StatusOr<StoredExchange> ParseExchange(absl::string_view text);

class ReplayStore {
 public:
  explicit ReplayStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path EntryPath(absl::string_view key) const;

  // NotFound when the key has no entry.
  absl::StatusOr<StoredExchange> Lookup(absl::string_view key) const;
  absl::Status Put(const StoredExchange& exchange);

  // Sorted. Empty when the directory does not exist.
  std::vector<std::string> ListKeys() const;

  // Checks one entry byte-for-byte: the file is in canonical form, its
  // request hashes to its key, and the response digest matches.
  absl::Status Verify(absl::string_view key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace oragent

#endif  // ORAGENT_REPLAY_STORE_H_
