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

#ifndef ORAGENT_LIVE_BACKEND_H_
#define ORAGENT_LIVE_BACKEND_H_

#include <atomic>
#include <chrono>
#include <functional>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oragent/gateway.h"

namespace oragent {

inline constexpr char kApiBaseEnv[] = "ORAGENT_API_BASE";
inline constexpr char kApiKeyEnv[] = "ORAGENT_API_KEY";

struct LiveEndpoint {
  // e.g. "https://api.deepseek.com/v1"; requests go to <base>/chat/completions.
  std::string base_url;
  std::string api_key;  // never persisted
};

// Reads ORAGENT_API_BASE (required) and ORAGENT_API_KEY (optional).
absl::StatusOr<LiveEndpoint> LiveEndpointFromEnv();

// Retries transport failures and 5xx statuses. With the defaults a call is
// tried at most 4 times, sleeping 1 s, 2 s, 4 s between tries.
struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{1000};
  double multiplier = 2.0;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;
using LogSink = std::function<void(absl::string_view)>;

void SleepFor(std::chrono::milliseconds duration);
void LogToStderr(absl::string_view line);

// True for the status codes the live backend uses for retryable failures.
bool IsRetryable(const absl::Status& status);

// Runs `call` until it succeeds, fails with a non-retryable status, or the
// retry budget is spent.
template <typename T>
absl::StatusOr<T> CallWithRetry(
    const RetryPolicy& policy, const std::function<absl::StatusOr<T>()>& call,
    const Sleeper& sleep, const std::function<void(int, std::chrono::milliseconds,
                                                   const absl::Status&)>& on_retry) {
  std::chrono::milliseconds delay = policy.initial_backoff;
  for (int retry = 0;; ++retry) {
    absl::StatusOr<T> result = call();
    if (result.ok() || !IsRetryable(result.status()) ||
        retry >= policy.max_retries) {
      return result;
    }
    on_retry(retry + 1, delay, result.status());
    sleep(delay);
    delay = std::chrono::milliseconds(
        static_cast<int64_t>(static_cast<double>(delay.count()) * policy.multiplier));
  }
}

// OpenAI-compatible chat-completions client. A separate
// `reasoning_content` field in the reply is folded back into the raw text as a
// leading think span, so reasoning is handled uniformly by StripReasoning.
class LiveBackend : public ChatBackend {
 public:
  explicit LiveBackend(LiveEndpoint endpoint, RetryPolicy policy = {},
                       Sleeper sleeper = SleepFor, LogSink log = LogToStderr);

  absl::StatusOr<CompletionResult> Complete(
      const Transcript& transcript, const GenerationConfig& config) override;

  int retries_performed() const { return retries_.load(); }

 private:
  absl::StatusOr<CompletionResult> CompleteOnce(const std::string& body,
                                                const GenerationConfig& config);

  LiveEndpoint endpoint_;
  std::string origin_;       // scheme://host[:port]
  std::string path_prefix_;  // e.g. "/v1"
  RetryPolicy policy_;
  Sleeper sleeper_;
  LogSink log_;
  std::atomic<int> retries_{0};
};

}  // namespace oragent

#endif  // ORAGENT_LIVE_BACKEND_H_
