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

// Problem corpora stored as newline-delimited JSON records.
//
// Each non-blank line is one object:
//
//   {"id": "p1", "question": "...", "answer": 36, "source": "textbook 2.1"}
//
//   id        string, optional. Synthesized as "<corpus name>-<line number>"
//             when absent. Must be unique within the file.
//   question  string, required, non-blank. Natural language, LaTeX and
//             tabular fragments are passed through untouched.
//   answer    number, numeric string, or null/absent for unlabeled problems.
//             Must be finite.
//   source    string, optional provenance tag.
//
// The corpus name is the file stem ("bwor.jsonl" -> "bwor").

#ifndef ORAGENT_CORPUS_H_
#define ORAGENT_CORPUS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace oragent {

struct ProblemInstance {
  std::string id;
  std::string description;
  std::optional<double> ground_truth;
  std::optional<std::string> source_tag;

  bool operator==(const ProblemInstance&) const = default;
};

// Immutable after load; iteration order is file order.
struct Corpus {
  std::string name;
  std::vector<ProblemInstance> problems;

  // Returns nullptr when no problem carries `id`.
  const ProblemInstance* Find(absl::string_view id) const;
  size_t size() const { return problems.size(); }

  bool operator==(const Corpus&) const = default;
};

absl::StatusOr<Corpus> LoadCorpus(const std::filesystem::path& path);

// Parses corpus text. `name` is used for id synthesis and error messages.
absl::StatusOr<Corpus> ParseCorpus(absl::string_view name,
                                   absl::string_view text);

// Inverse of ParseCorpus: one record per line, keys in canonical order.
std::string SerializeCorpus(const Corpus& corpus);
absl::Status WriteCorpus(const Corpus& corpus,
                         const std::filesystem::path& path);

enum class FindingSeverity { kWarning, kError };

struct ValidationFinding {
  FindingSeverity severity;
  std::string problem_id;
  std::string message;
};

// Pure diagnostic. Missing ground truth is a warning; blank descriptions and
// non-finite ground truth are errors.
std::vector<ValidationFinding> ValidateCorpus(const Corpus& corpus);

bool HasErrors(const std::vector<ValidationFinding>& findings);

}  // namespace oragent

#endif  // ORAGENT_CORPUS_H_
