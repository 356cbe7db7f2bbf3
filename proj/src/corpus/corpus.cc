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

#include "oragent/corpus.h"

#include <charconv>
#include <cmath>
#include <unordered_set>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "oragent/file_util.h"

namespace oragent {
namespace {

using Json = nlohmann::ordered_json;

absl::Status RecordError(absl::string_view corpus, int line,
                         absl::string_view field, absl::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat(
      corpus, ":", line, ": field '", field, "': ", what));
}

// Accepts a JSON number or a string holding exactly one decimal literal.
std::optional<double> ParseAnswer(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) return std::nullopt;
  std::string text(absl::StripAsciiWhitespace(value.get<std::string>()));
  if (text.empty()) return std::nullopt;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (*begin == '+') ++begin;
  double parsed = 0;
  auto [ptr, ec] = std::from_chars(begin, end, parsed);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return parsed;
}

}  // namespace

const ProblemInstance* Corpus::Find(absl::string_view id) const {
  for (const ProblemInstance& p : problems) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

absl::StatusOr<Corpus> ParseCorpus(absl::string_view name,
                                   absl::string_view text) {
  Corpus corpus;
  corpus.name = std::string(name);
  std::unordered_set<std::string> seen;
  int line_number = 0;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (absl::StripAsciiWhitespace(line).empty()) continue;

    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error& e) {
      return absl::InvalidArgumentError(absl::StrCat(
          name, ":", line_number, ": malformed JSON record: ", e.what()));
    }
    if (!record.is_object()) {
      return absl::InvalidArgumentError(absl::StrCat(
          name, ":", line_number, ": record is not a JSON object"));
    }

    ProblemInstance problem;
    if (auto it = record.find("id"); it != record.end() && !it->is_null()) {
      if (!it->is_string() || it->get<std::string>().empty()) {
        return RecordError(name, line_number, "id", "expected a nonempty string");
      }
      problem.id = it->get<std::string>();
    } else {
      problem.id = absl::StrCat(name, "-", line_number);
    }

    auto question = record.find("question");
    if (question == record.end() || !question->is_string()) {
      return RecordError(name, line_number, "question", "missing or not a string");
    }
    problem.description = question->get<std::string>();
    if (absl::StripAsciiWhitespace(problem.description).empty()) {
      return RecordError(name, line_number, "question", "blank description");
    }

    if (auto it = record.find("answer"); it != record.end() && !it->is_null()) {
      std::optional<double> answer = ParseAnswer(*it);
      if (!answer.has_value()) {
        return RecordError(name, line_number, "answer",
                           absl::StrCat("expected a decimal number, got ",
                                        it->dump()));
      }
      if (!std::isfinite(*answer)) {
        return RecordError(name, line_number, "answer", "value is not finite");
      }
      problem.ground_truth = *answer;
    }

    if (auto it = record.find("source"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) {
        return RecordError(name, line_number, "source", "expected a string");
      }
      problem.source_tag = it->get<std::string>();
    }

    if (!seen.insert(problem.id).second) {
      return absl::AlreadyExistsError(absl::StrCat(
          name, ":", line_number, ": duplicate id \"", problem.id, "\""));
    }
    corpus.problems.push_back(std::move(problem));
  }
  if (corpus.problems.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(name, ": corpus is empty"));
  }
  return corpus;
}

absl::StatusOr<Corpus> LoadCorpus(const std::filesystem::path& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseCorpus(path.stem().string(), *text);
}

std::string SerializeCorpus(const Corpus& corpus) {
  std::string out;
  for (const ProblemInstance& p : corpus.problems) {
    Json record;
    record["id"] = p.id;
    record["question"] = p.description;
    if (p.ground_truth.has_value()) {
      record["answer"] = *p.ground_truth;
    } else {
      record["answer"] = nullptr;
    }
    if (p.source_tag.has_value()) record["source"] = *p.source_tag;
    absl::StrAppend(&out,
                    record.dump(-1, ' ', false, Json::error_handler_t::replace),
                    "\n");
  }
  return out;
}

absl::Status WriteCorpus(const Corpus& corpus,
                         const std::filesystem::path& path) {
  return WriteFileAtomically(path, SerializeCorpus(corpus));
}

std::vector<ValidationFinding> ValidateCorpus(const Corpus& corpus) {
  std::vector<ValidationFinding> findings;
  for (const ProblemInstance& p : corpus.problems) {
    if (absl::StripAsciiWhitespace(p.description).empty()) {
      findings.push_back({FindingSeverity::kError, p.id, "blank description"});
    }
    if (!p.ground_truth.has_value()) {
      findings.push_back({FindingSeverity::kWarning, p.id,
                          "no ground truth; excluded from accuracy"});
    } else if (!std::isfinite(*p.ground_truth)) {
      findings.push_back(
          {FindingSeverity::kError, p.id, "ground truth is not finite"});
    }
  }
  return findings;
}

bool HasErrors(const std::vector<ValidationFinding>& findings) {
  for (const ValidationFinding& f : findings) {
    if (f.severity == FindingSeverity::kError) return true;
  }
  return false;
}

}  // namespace oragent
