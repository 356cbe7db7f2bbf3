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

#include "oragent/run_record.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace oragent {
namespace {

using Json = nlohmann::ordered_json;

std::string Dump(const Json& doc, int indent) {
  return doc.dump(indent, ' ', false, Json::error_handler_t::replace);
}

Json ErrorToJson(const ErrorReport& error) {
  Json j;
  j["kind"] = std::string(ErrorKindName(error.kind));
  j["exit_code"] = error.exit_code.has_value() ? Json(*error.exit_code) : Json();
  j["stderr"] = error.stderr_excerpt;
  j["stdout"] = error.stdout_excerpt;
  return j;
}

Json OutcomeToJson(const ExecutionOutcome& outcome) {
  Json j;
  if (outcome.succeeded()) {
    j["status"] = "solved";
    j["objective"] = outcome.solution().objective;
    j["status_line"] = outcome.solution().status_line;
  } else {
    j["status"] = "error";
    j["error"] = ErrorToJson(outcome.error());
  }
  return j;
}

// Thrown inside the parser and turned into InvalidArgument at the boundary.
struct FormatError {
  std::string message;
};

const Json& Field(const Json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) {
    throw FormatError{absl::StrCat("missing field '", name, "'")};
  }
  return obj.at(name);
}

std::string StringField(const Json& obj, const char* name) {
  const Json& v = Field(obj, name);
  if (!v.is_string()) throw FormatError{absl::StrCat("'", name, "' must be a string")};
  return v.get<std::string>();
}

int IntField(const Json& obj, const char* name) {
  const Json& v = Field(obj, name);
  if (!v.is_number_integer()) {
    throw FormatError{absl::StrCat("'", name, "' must be an integer")};
  }
  return v.get<int>();
}

double NumberField(const Json& obj, const char* name) {
  const Json& v = Field(obj, name);
  if (!v.is_number()) throw FormatError{absl::StrCat("'", name, "' must be a number")};
  return v.get<double>();
}

template <typename T>
T Unwrap(absl::StatusOr<T> value) {
  if (!value.ok()) throw FormatError{std::string(value.status().message())};
  return *std::move(value);
}

ErrorReport ErrorFromJson(const Json& j) {
  ErrorReport error;
  error.kind = Unwrap(ParseErrorKind(StringField(j, "kind")));
  const Json& code = Field(j, "exit_code");
  if (!code.is_null()) {
    if (!code.is_number_integer()) throw FormatError{"'exit_code' must be an integer"};
    error.exit_code = code.get<int>();
  }
  error.stderr_excerpt = StringField(j, "stderr");
  error.stdout_excerpt = StringField(j, "stdout");
  return error;
}

ExecutionOutcome OutcomeFromJson(const Json& j) {
  const std::string status = StringField(j, "status");
  if (status == "solved") {
    return ExecutionOutcome{
        Solution{NumberField(j, "objective"), StringField(j, "status_line")},
        std::chrono::milliseconds(0)};
  }
  if (status == "error") {
    return ExecutionOutcome{ErrorFromJson(Field(j, "error")),
                            std::chrono::milliseconds(0)};
  }
  throw FormatError{absl::StrCat("unknown outcome status '", status, "'")};
}

RunRecord RecordFromJson(const Json& doc) {
  if (StringField(doc, "format") != kRunRecordFormat) {
    throw FormatError{"unsupported record format"};
  }
  RunRecord r;
  r.problem_id = StringField(doc, "problem_id");
  r.mode = Unwrap(ParsePipelineMode(StringField(doc, "mode")));
  r.model_id = StringField(doc, "model_id");
  const Json& math = Field(doc, "math_doc");
  if (!math.is_null()) {
    r.math_doc = MathModelDoc{r.problem_id, StringField(math, "body"),
                              StringField(math, "transcript_key")};
  }
  const Json& codes = Field(doc, "codes");
  if (!codes.is_array()) throw FormatError{"'codes' must be an array"};
  for (const Json& c : codes) {
    r.codes.push_back(CodeArtifact{
        r.problem_id, StringField(c, "source"), IntField(c, "attempt_index"),
        Unwrap(ParseProvenance(StringField(c, "provenance"))),
        StringField(c, "transcript_key")});
  }
  const Json& attempts = Field(doc, "attempts");
  if (!attempts.is_array() || attempts.empty()) {
    throw FormatError{"'attempts' must be a nonempty array"};
  }
  for (const Json& a : attempts) {
    AttemptTrace t;
    t.attempt = IntField(a, "attempt");
    const Json& ref = Field(a, "code_ref");
    if (!ref.is_null()) {
      if (!ref.is_number_integer()) throw FormatError{"'code_ref' must be an integer"};
      t.code_ref = ref.get<int>();
      if (t.code_ref < 0 || t.code_ref >= static_cast<int>(r.codes.size())) {
        throw FormatError{absl::StrCat("code_ref ", t.code_ref, " out of range")};
      }
    }
    t.outcome = OutcomeFromJson(Field(a, "outcome"));
    t.repair_applied_after =
        Unwrap(ParseRepairAction(StringField(a, "repair_applied_after")));
    r.attempts.push_back(std::move(t));
  }
  const Json& fin = Field(doc, "final");
  const std::string status = StringField(fin, "status");
  if (status == "solved") {
    r.final = Solved{NumberField(fin, "objective")};
  } else if (status == "failed") {
    r.final = Failed{ErrorFromJson(Field(fin, "error"))};
  } else {
    throw FormatError{absl::StrCat("unknown final status '", status, "'")};
  }
  return r;
}

}  // namespace

std::string SerializeRunRecord(const RunRecord& record) {
  Json doc;
  doc["format"] = std::string(kRunRecordFormat);
  doc["problem_id"] = record.problem_id;
  doc["mode"] = std::string(PipelineModeName(record.mode));
  doc["model_id"] = record.model_id;
  if (record.math_doc.has_value()) {
    Json m;
    m["transcript_key"] = record.math_doc->transcript_key;
    m["body"] = record.math_doc->body;
    doc["math_doc"] = std::move(m);
  } else {
    doc["math_doc"] = nullptr;
  }
  Json codes = Json::array();
  for (const CodeArtifact& c : record.codes) {
    Json j;
    j["attempt_index"] = c.attempt_index;
    j["provenance"] = std::string(ProvenanceName(c.provenance));
    j["transcript_key"] = c.transcript_key;
    j["source"] = c.source;
    codes.push_back(std::move(j));
  }
  doc["codes"] = std::move(codes);
  Json attempts = Json::array();
  for (const AttemptTrace& t : record.attempts) {
    Json j;
    j["attempt"] = t.attempt;
    j["code_ref"] = t.code_ref >= 0 ? Json(t.code_ref) : Json();
    j["outcome"] = OutcomeToJson(t.outcome);
    j["repair_applied_after"] = std::string(RepairActionName(t.repair_applied_after));
    attempts.push_back(std::move(j));
  }
  doc["attempts"] = std::move(attempts);
  Json fin;
  if (const Solved* s = std::get_if<Solved>(&record.final)) {
    fin["status"] = "solved";
    fin["objective"] = s->objective;
  } else {
    fin["status"] = "failed";
    fin["error"] = ErrorToJson(std::get<Failed>(record.final).error);
  }
  doc["final"] = std::move(fin);
  return Dump(doc, 2) + "\n";
}

absl::StatusOr<RunRecord> ParseRunRecord(absl::string_view text) {
  try {
    return RecordFromJson(Json::parse(text));
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("run record: ", e.what()));
  } catch (const FormatError& e) {
    return absl::InvalidArgumentError(absl::StrCat("run record: ", e.message));
  }
}

std::string SerializeTimings(const RunRecord& record) {
  Json doc;
  doc["problem_id"] = record.problem_id;
  doc["total_ms"] = record.total_wall_time.count();
  Json per = Json::array();
  for (const AttemptTrace& t : record.attempts) per.push_back(t.outcome.wall_time.count());
  doc["attempt_ms"] = std::move(per);
  return Dump(doc, -1);
}

}  // namespace oragent
