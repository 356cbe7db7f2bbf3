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

// JSON form of RunRecord.
//
// The record file holds everything that is a function of the inputs and
// nothing else: wall times go to a separate timings line so that two replays
// of the same store produce byte-identical record files.

#ifndef ORAGENT_RUN_RECORD_H_
#define ORAGENT_RUN_RECORD_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oragent/debug_loop.h"

namespace oragent {

inline constexpr absl::string_view kRunRecordFormat = "oragent-record-v1";

// Pretty-printed, fixed key order, trailing newline. Timings are omitted.
std::string SerializeRunRecord(const RunRecord& record);

// Inverse of SerializeRunRecord; wall times come back as zero.
absl::StatusOr<RunRecord> ParseRunRecord(absl::string_view text);

// One JSON line: {"problem_id", "total_ms", "attempt_ms": [...]}.
std::string SerializeTimings(const RunRecord& record);

}  // namespace oragent

#endif  // ORAGENT_RUN_RECORD_H_
