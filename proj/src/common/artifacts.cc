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

#include "oragent/artifacts.h"

#include "absl/strings/str_cat.h"
#include "oragent/execution.h"

namespace oragent {

absl::string_view ProvenanceName(Provenance provenance) {
  switch (provenance) {
    case Provenance::kInitial:
      return "initial";
    case Provenance::kCodeRepair:
      return "code_repair";
    case Provenance::kMathRepair:
      return "math_repair";
  }
  return "unknown";
}

absl::StatusOr<Provenance> ParseProvenance(absl::string_view name) {
  for (Provenance p : {Provenance::kInitial, Provenance::kCodeRepair,
                       Provenance::kMathRepair}) {
    if (ProvenanceName(p) == name) return p;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown provenance '", name, "'"));
}

absl::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSpawnFailure:
      return "spawn_failure";
    case ErrorKind::kNonzeroExit:
      return "nonzero_exit";
    case ErrorKind::kTimeout:
      return "timeout";
    case ErrorKind::kProtocolMissing:
      return "protocol_missing";
    case ErrorKind::kModelInfeasible:
      return "model_infeasible";
    case ErrorKind::kModelUnbounded:
      return "model_unbounded";
    case ErrorKind::kAgentError:
      return "agent_error";
  }
  return "unknown";
}

absl::StatusOr<ErrorKind> ParseErrorKind(absl::string_view name) {
  for (ErrorKind k :
       {ErrorKind::kSpawnFailure, ErrorKind::kNonzeroExit, ErrorKind::kTimeout,
        ErrorKind::kProtocolMissing, ErrorKind::kModelInfeasible,
        ErrorKind::kModelUnbounded, ErrorKind::kAgentError}) {
    if (ErrorKindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown error kind '", name, "'"));
}

bool ReachedSolverVerdict(ErrorKind kind) {
  return kind == ErrorKind::kModelInfeasible ||
         kind == ErrorKind::kModelUnbounded;
}

std::string TailExcerpt(absl::string_view text, size_t max_bytes) {
  if (text.size() <= max_bytes) return std::string(text);
  size_t start = text.size() - max_bytes;
  // Skip UTF-8 continuation bytes (10xxxxxx).
  while (start < text.size() &&
         (static_cast<unsigned char>(text[start]) & 0xC0) == 0x80) {
    ++start;
  }
  return std::string(text.substr(start));
}

}  // namespace oragent
