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

// The marker-line protocol generated programs use to report a verdict.
//
//   ^OPTIMAL_VALUE=(-?[0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?)$
//   ^MODEL_STATUS=(INFEASIBLE|UNBOUNDED)$
//
// Lines are '\n'-separated and matched whole; no whitespace is tolerated.

#ifndef ORAGENT_RESULT_PROTOCOL_H_
#define ORAGENT_RESULT_PROTOCOL_H_

#include <string>
#include <variant>

#include "absl/strings/string_view.h"
#include "oragent/execution.h"

namespace oragent {

// The last OPTIMAL_VALUE line wins. Without one, the last MODEL_STATUS line
// yields kModelInfeasible / kModelUnbounded; otherwise kProtocolMissing.
// An OPTIMAL_VALUE whose number overflows to infinity is not a solution.
// Returned error reports carry the stdout tail and no exit code.
std::variant<Solution, ErrorReport> ParseResult(absl::string_view stdout_text);

// Instructions injected into code-generation prompts as {protocol_spec}.
std::string ResultProtocolSpec();

}  // namespace oragent

#endif  // ORAGENT_RESULT_PROTOCOL_H_
