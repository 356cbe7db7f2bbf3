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

#include "oragent/replay_store.h"

#include <algorithm>
#include <system_error>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "oragent/file_util.h"
#include "oragent/gateway.h"

namespace oragent {
namespace {

using Json = nlohmann::ordered_json;

constexpr absl::string_view kFormat = "oragent-replay-v1";
constexpr absl::string_view kSuffix = ".json";

bool IsWellFormedKey(absl::string_view key) {
  return key.size() == 64 &&
         std::all_of(key.begin(), key.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

}  // namespace

std::string SerializeExchange(const StoredExchange& exchange) {
  Json messages = Json::array();
  for (const ChatMessage& m : exchange.request.messages) {
    Json message;
    message["role"] = RoleName(m.role);
    message["content"] = m.content;
    messages.push_back(std::move(message));
  }
  Json doc;
  doc["format"] = kFormat;
  doc["key"] = exchange.key;
  doc["request"]["model"] = exchange.model_id;
  doc["request"]["temperature"] = exchange.temperature;
  doc["request"]["messages"] = std::move(messages);
  doc["response"]["raw_text"] = exchange.raw_text;
  if (exchange.usage.has_value()) {
    doc["response"]["usage"]["prompt_tokens"] = exchange.usage->prompt_tokens;
    doc["response"]["usage"]["completion_tokens"] =
        exchange.usage->completion_tokens;
  } else {
    doc["response"]["usage"] = nullptr;
  }
  doc["response_sha256"] = Sha256Hex(exchange.raw_text);
  return doc.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

absl::StatusOr<StoredExchange> ParseExchange(absl::string_view text) {
  StoredExchange exchange;
  try {
    const Json doc = Json::parse(text);
    if (doc.at("format").get<std::string>() != kFormat) {
      return absl::DataLossError("unsupported replay entry format");
    }
    exchange.key = doc.at("key").get<std::string>();
    const Json& request = doc.at("request");
    exchange.model_id = request.at("model").get<std::string>();
    exchange.temperature = request.at("temperature").get<double>();
    for (const Json& m : request.at("messages")) {
      absl::StatusOr<Role> role = ParseRole(m.at("role").get<std::string>());
      if (!role.ok()) return absl::DataLossError(role.status().message());
      exchange.request.messages.push_back(
          {*role, m.at("content").get<std::string>()});
    }
    const Json& response = doc.at("response");
    exchange.raw_text = response.at("raw_text").get<std::string>();
    const Json& usage = response.at("usage");
    if (!usage.is_null()) {
      exchange.usage = TokenUsage{usage.at("prompt_tokens").get<int64_t>(),
                                  usage.at("completion_tokens").get<int64_t>()};
    }
  } catch (const Json::exception& e) {
    return absl::DataLossError(absl::StrCat("malformed replay entry: ", e.what()));
  }
  return exchange;
}

std::filesystem::path ReplayStore::EntryPath(absl::string_view key) const {
  return dir_ / absl::StrCat(key, kSuffix);
}

absl::StatusOr<StoredExchange> ReplayStore::Lookup(absl::string_view key) const {
  if (!IsWellFormedKey(key)) {
    return absl::InvalidArgumentError(absl::StrCat("malformed key '", key, "'"));
  }
  const std::filesystem::path path = EntryPath(key);
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) {
    return absl::NotFoundError(
        absl::StrCat("replay miss: no stored response for key ", key));
  }
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<StoredExchange> exchange = ParseExchange(*text);
  if (!exchange.ok()) {
    return absl::DataLossError(
        absl::StrCat(path.string(), ": ", exchange.status().message()));
  }
  if (exchange->key != key) {
    return absl::DataLossError(
        absl::StrCat(path.string(), ": entry key does not match file name"));
  }
  return exchange;
}

absl::Status ReplayStore::Put(const StoredExchange& exchange) {
  if (!IsWellFormedKey(exchange.key)) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed key '", exchange.key, "'"));
  }
  return WriteFileAtomically(EntryPath(exchange.key),
                             SerializeExchange(exchange));
}

std::vector<std::string> ReplayStore::ListKeys() const {
  std::vector<std::string> keys;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir_, ec)) {
    const std::string name = entry.path().filename().string();
    if (!absl::EndsWith(name, kSuffix)) continue;
    std::string key = name.substr(0, name.size() - kSuffix.size());
    if (IsWellFormedKey(key)) keys.push_back(std::move(key));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

absl::Status ReplayStore::Verify(absl::string_view key) const {
  const std::filesystem::path path = EntryPath(key);
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  absl::StatusOr<StoredExchange> exchange = ParseExchange(*text);
  if (!exchange.ok()) {
    return absl::DataLossError(
        absl::StrCat(path.string(), ": ", exchange.status().message()));
  }
  // Re-serializing recomputes response_sha256, so this also catches edits to
  // the response text or to the digest itself.
  if (SerializeExchange(*exchange) != *text) {
    return absl::DataLossError(
        absl::StrCat(path.string(), ": entry is not in canonical form"));
  }
  GenerationConfig config;
  config.model_id = exchange->model_id;
  config.temperature = exchange->temperature;
  if (TranscriptKey(exchange->request, config) != key || exchange->key != key) {
    return absl::DataLossError(
        absl::StrCat(path.string(), ": request does not hash to its key"));
  }
  return absl::OkStatus();
}

}  // namespace oragent
