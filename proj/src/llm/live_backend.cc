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

#include "oragent/live_backend.h"

#include <cstdlib>
#include <iostream>
#include <thread>

#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "httplib.h"
#include "json.hpp"
#include "oragent/reasoning.h"

namespace oragent {
namespace {

using Json = nlohmann::json;

absl::Status StatusForHttp(int status, absl::string_view body) {
  std::string excerpt(body.substr(0, 300));
  std::string message = absl::StrCat("endpoint returned HTTP ", status, ": ", excerpt);
  if (status >= 500) return absl::UnavailableError(message);
  if (status == 401) return absl::UnauthenticatedError(message);
  if (status == 403) return absl::PermissionDeniedError(message);
  if (status == 404) return absl::NotFoundError(message);
  if (status == 429) return absl::ResourceExhaustedError(message);
  return absl::FailedPreconditionError(message);
}

}  // namespace

void SleepFor(std::chrono::milliseconds duration) {
  std::this_thread::sleep_for(duration);
}

void LogToStderr(absl::string_view line) { std::cerr << line << '\n'; }

bool IsRetryable(const absl::Status& status) {
  return status.code() == absl::StatusCode::kUnavailable ||
         status.code() == absl::StatusCode::kDeadlineExceeded;
}

absl::StatusOr<LiveEndpoint> LiveEndpointFromEnv() {
  const char* base = std::getenv(kApiBaseEnv);
  if (base == nullptr || *base == '\0') {
    return absl::FailedPreconditionError(
        absl::StrCat(kApiBaseEnv, " is not set; the live backend needs it"));
  }
  const char* key = std::getenv(kApiKeyEnv);
  return LiveEndpoint{base, key == nullptr ? "" : key};
}

LiveBackend::LiveBackend(LiveEndpoint endpoint, RetryPolicy policy,
                         Sleeper sleeper, LogSink log)
    : endpoint_(std::move(endpoint)),
      policy_(policy),
      sleeper_(std::move(sleeper)),
      log_(std::move(log)) {
  absl::string_view url = endpoint_.base_url;
  while (absl::EndsWith(url, "/")) url.remove_suffix(1);
  const size_t scheme = url.find("://");
  const size_t path = url.find('/', scheme == absl::string_view::npos ? 0 : scheme + 3);
  origin_ = std::string(url.substr(0, path));
  path_prefix_ = path == absl::string_view::npos ? "" : std::string(url.substr(path));
}

absl::StatusOr<CompletionResult> LiveBackend::CompleteOnce(
    const std::string& body, const GenerationConfig& config) {
  httplib::Client client(origin_);
  if (!client.is_valid()) {
    return absl::FailedPreconditionError(
        absl::StrCat("cannot use endpoint '", endpoint_.base_url, "'"));
  }
  client.set_connection_timeout(std::chrono::seconds(30));
  client.set_read_timeout(config.request_timeout);
  client.set_write_timeout(std::chrono::seconds(60));
  if (!endpoint_.api_key.empty()) client.set_bearer_token_auth(endpoint_.api_key);

  httplib::Result response = client.Post(
      absl::StrCat(path_prefix_, "/chat/completions"), body, "application/json");
  if (!response) {
    const httplib::Error error = response.error();
    std::string message = absl::StrCat("transport error: ", httplib::to_string(error));
    if (error == httplib::Error::ConnectionTimeout || error == httplib::Error::Read) {
      return absl::DeadlineExceededError(message);
    }
    return absl::UnavailableError(message);
  }
  if (response->status < 200 || response->status >= 300) {
    return StatusForHttp(response->status, response->body);
  }

  try {
    const Json doc = Json::parse(response->body);
    const Json& message = doc.at("choices").at(0).at("message");
    std::string content;
    if (auto it = message.find("content"); it != message.end() && it->is_string()) {
      content = it->get<std::string>();
    }
    std::string raw;
    if (auto it = message.find("reasoning_content");
        it != message.end() && it->is_string() && !it->get<std::string>().empty()) {
      raw = absl::StrCat(kThinkOpen, "\n", it->get<std::string>(), "\n",
                         kThinkClose, "\n", content);
    } else {
      raw = std::move(content);
    }
    std::optional<TokenUsage> usage;
    if (auto it = doc.find("usage"); it != doc.end() && it->is_object()) {
      usage = TokenUsage{it->value("prompt_tokens", int64_t{0}),
                         it->value("completion_tokens", int64_t{0})};
    }
    return MakeCompletionResult(std::move(raw), usage);
  } catch (const Json::exception& e) {
    return absl::InternalError(
        absl::StrCat("malformed chat-completions response: ", e.what()));
  }
}

absl::StatusOr<CompletionResult> LiveBackend::Complete(
    const Transcript& transcript, const GenerationConfig& config) {
  if (absl::Status valid = ValidateTranscript(transcript); !valid.ok()) {
    return valid;
  }
  if (absl::Status valid = ValidateGenerationConfig(config); !valid.ok()) {
    return valid;
  }
  Json request;
  request["model"] = config.model_id;
  request["temperature"] = config.temperature;
  request["max_tokens"] = config.max_output_tokens;
  request["stream"] = false;
  request["messages"] = Json::array();
  for (const ChatMessage& m : transcript.messages) {
    request["messages"].push_back(
        {{"role", std::string(RoleName(m.role))}, {"content", m.content}});
  }
  const std::string body = request.dump(-1, ' ', false, Json::error_handler_t::replace);

  return CallWithRetry<CompletionResult>(
      policy_, [&] { return CompleteOnce(body, config); }, sleeper_,
      [&](int retry, std::chrono::milliseconds delay, const absl::Status& why) {
        retries_.fetch_add(1);
        log_(absl::StrFormat("[oragent] retry %d/%d in %d ms after: %s", retry,
                             policy_.max_retries, delay.count(), why.message()));
      });
}

}  // namespace oragent
