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

#include "oragent/result_protocol.h"

#include <string>
#include <variant>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "oragent/file_util.h"
#include "test_util.h"

namespace oragent {
namespace {

using ::oragent::testing::TestData;
using Json = nlohmann::json;

Json Vectors() {
  absl::StatusOr<std::string> text = ReadFile(TestData() / "protocol_vectors.json");
  EXPECT_TRUE(text.ok()) << text.status();
  Json doc = Json::parse(*text);
  EXPECT_EQ(doc["format"], "oragent-protocol-vectors-v1");
  return doc;
}

// Maps a parse result onto the vector file's verdict vocabulary.
Json Verdict(const std::variant<Solution, ErrorReport>& r) {
  if (const Solution* s = std::get_if<Solution>(&r)) {
    return {{"status", "optimal"}, {"objective", s->objective}};
  }
  switch (std::get<ErrorReport>(r).kind) {
    case ErrorKind::kModelInfeasible:
      return {{"status", "infeasible"}};
    case ErrorKind::kModelUnbounded:
      return {{"status", "unbounded"}};
    case ErrorKind::kProtocolMissing:
      return {{"status", "protocol_missing"}};
    default:
      return {{"status", "unexpected"}};
  }
}

TEST(ResultProtocolTest, ParseVectors) {
  const Json doc = Vectors();
  ASSERT_GE(doc["parse"].size(), 20u);
  for (const Json& v : doc["parse"]) {
    const Json got = Verdict(ParseResult(v["stdout"].get<std::string>()));
    const Json& want = v["verdict"];
    EXPECT_EQ(got["status"], want["status"]) << v["name"];
    if (want.contains("objective")) {
      EXPECT_DOUBLE_EQ(got.value("objective", 0.0), want["objective"].get<double>())
          << v["name"];
    }
  }
}

TEST(ResultProtocolTest, EmitVectorsParseBack) {
  const Json doc = Vectors();
  ASSERT_FALSE(doc["emit"].empty());
  for (const Json& v : doc["emit"]) {
    const std::string line = v["line"].get<std::string>();
    const auto parsed = ParseResult(line + "\n");
    const Json got = Verdict(parsed);
    EXPECT_EQ(got["status"], v["verdict"]["status"]) << line;
    if (const Solution* s = std::get_if<Solution>(&parsed)) {
      EXPECT_DOUBLE_EQ(s->objective, v["verdict"]["objective"].get<double>());
      EXPECT_EQ(s->status_line, line);
    }
  }
}

TEST(ResultProtocolTest, ErrorReportCarriesStdoutTail) {
  const auto r = ParseResult("objective is 5\n");
  ASSERT_TRUE(std::holds_alternative<ErrorReport>(r));
  EXPECT_EQ(std::get<ErrorReport>(r).stdout_excerpt, "objective is 5\n");
  EXPECT_FALSE(std::get<ErrorReport>(r).exit_code.has_value());
}

TEST(ResultProtocolTest, SpecMentionsBothMarkers) {
  const std::string spec = ResultProtocolSpec();
  EXPECT_THAT(spec, ::testing::HasSubstr("OPTIMAL_VALUE="));
  EXPECT_THAT(spec, ::testing::HasSubstr("MODEL_STATUS=INFEASIBLE"));
  EXPECT_THAT(spec, ::testing::HasSubstr("MODEL_STATUS=UNBOUNDED"));
}

TEST(TailExcerptTest, KeepsTailOnUtf8Boundary) {
  EXPECT_EQ(TailExcerpt("abcdef", 3), "def");
  EXPECT_EQ(TailExcerpt("ab", 10), "ab");
  // "é" is two bytes; a cut through it moves forward.
  EXPECT_EQ(TailExcerpt("x\xC3\xA9y", 2), "y");
  EXPECT_EQ(TailExcerpt("x\xC3\xA9y", 3), "\xC3\xA9y");
}

}  // namespace
}  // namespace oragent
