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

// Artifacts produced by the agents: the formulation and the solver programs.

#ifndef ORAGENT_ARTIFACTS_H_
#define ORAGENT_ARTIFACTS_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace oragent {

struct MathModelDoc {
  std::string problem_id;
  std::string body;            // Markdown formulation, never empty
  std::string transcript_key;  // exchange that produced it

  bool operator==(const MathModelDoc&) const = default;
};

enum class Provenance { kInitial, kCodeRepair, kMathRepair };

absl::string_view ProvenanceName(Provenance provenance);
absl::StatusOr<Provenance> ParseProvenance(absl::string_view name);

// attempt_index is 0 exactly for the initial program; a program produced by
// the repair after attempt i carries attempt_index i.
struct CodeArtifact {
  std::string problem_id;
  std::string source;  // program text only, no prose or fences
  int attempt_index = 0;
  Provenance provenance = Provenance::kInitial;
  std::string transcript_key;

  bool operator==(const CodeArtifact&) const = default;
};

}  // namespace oragent

#endif  // ORAGENT_ARTIFACTS_H_
