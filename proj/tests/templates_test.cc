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

#include "oragent/templates.h"

#include <filesystem>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oragent/file_util.h"

namespace oragent {
namespace {

using ::testing::HasSubstr;

TEST(RenderTemplateTest, SubstitutesOnce) {
  absl::StatusOr<std::string> r =
      RenderTemplate("min {obj} s.t. {rows}", {{"obj", "{rows}"}, {"rows", "x>=0"}});
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r, "min {rows} s.t. x>=0");
}

TEST(RenderTemplateTest, EscapesAndStrayBraces) {
  EXPECT_EQ(*RenderTemplate("{{a}} }} {{", {}), "{a} } {");
  EXPECT_EQ(*RenderTemplate("\\frac{1}{2} {A} { x }", {}), "\\frac{1}{2} {A} { x }");
  EXPECT_EQ(*RenderTemplate("{unterminated", {}), "{unterminated");
}

TEST(RenderTemplateTest, UnboundPlaceholderFails) {
  absl::StatusOr<std::string> r = RenderTemplate("solve {problem}", {});
  EXPECT_EQ(r.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(r.status().message(), HasSubstr("{problem}"));
}

TEST(TemplatesTest, DefaultsRenderWithTheirBindings) {
  const PromptTemplateSet& t = DefaultTemplates();
  const TemplateBindings all = {{"problem", "P"},    {"math_model", "M"},
                                {"code", "C"},       {"error", "E"},
                                {"solver_name", "S"}, {"protocol_spec", "R"}};
  for (const std::string* s : {&t.system_math, &t.user_math, &t.system_code, &t.user_code,
                               &t.user_code_repair, &t.user_math_repair, &t.user_direct}) {
    EXPECT_FALSE(s->empty());
    EXPECT_TRUE(RenderTemplate(*s, all).ok()) << *s;
  }
  EXPECT_TRUE(RenderTemplate(t.user_math, {{"problem", "P"}}).ok());
  EXPECT_TRUE(RenderTemplate(t.system_math, {}).ok());
  EXPECT_TRUE(RenderTemplate(t.system_code, {}).ok());
  EXPECT_FALSE(RenderTemplate(t.user_code_repair, {{"code", "C"}}).ok());
}

TEST(TemplatesTest, PartialFileKeepsDefaults) {
  absl::StatusOr<PromptTemplateSet> t = ParseTemplates(R"({"user_math": "Q: {problem}"})");
  ASSERT_TRUE(t.ok()) << t.status();
  EXPECT_EQ(t->user_math, "Q: {problem}");
  EXPECT_EQ(t->user_code, DefaultTemplates().user_code);
  EXPECT_NE(TemplatesHash(*t), TemplatesHash(DefaultTemplates()));
}

TEST(TemplatesTest, RejectsBadFiles) {
  EXPECT_FALSE(ParseTemplates(R"({"user_maths": "x"})").ok());
  EXPECT_FALSE(ParseTemplates(R"({"user_math": 3})").ok());
  EXPECT_FALSE(ParseTemplates("[]").ok());
  EXPECT_FALSE(ParseTemplates("{").ok());
}

TEST(TemplatesTest, SerializeRoundTrip) {
  const std::string text = SerializeTemplates(DefaultTemplates());
  absl::StatusOr<PromptTemplateSet> back = ParseTemplates(text);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(*back, DefaultTemplates());
  EXPECT_EQ(TemplatesHash(DefaultTemplates()), Sha256Hex(text));
}

TEST(TemplatesTest, ShippedConfigMatchesDefaults) {
  const std::filesystem::path path =
      std::filesystem::path(ORAGENT_CONFIG_DIR) / "templates.json";
  absl::StatusOr<PromptTemplateSet> shipped = LoadTemplates(path);
  ASSERT_TRUE(shipped.ok()) << shipped.status();
  EXPECT_EQ(*shipped, DefaultTemplates());
  EXPECT_EQ(*ReadFile(path), SerializeTemplates(DefaultTemplates()));
}

}  // namespace
}  // namespace oragent
