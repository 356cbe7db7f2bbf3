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

#include "oragent/reasoning.h"

#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace oragent {
namespace {

TEST(StripReasoningTest, NoTagsIsIdentity) {
  const StrippedText r = StripReasoning("  plain answer\n");
  EXPECT_EQ(r.answer, "  plain answer\n");
  EXPECT_FALSE(r.reasoning.has_value());
}

TEST(StripReasoningTest, LeadingSpan) {
  const StrippedText r = StripReasoning("<think>\n let me see \n</think>\n\nThe model.");
  EXPECT_EQ(r.answer, "The model.");
  ASSERT_TRUE(r.reasoning.has_value());
  EXPECT_EQ(*r.reasoning, "let me see");
}

TEST(StripReasoningTest, SeveralSpansJoined) {
  const StrippedText r = StripReasoning("<think>a</think>x <think> b </think>y");
  EXPECT_EQ(r.answer, "x y");
  EXPECT_EQ(r.reasoning, std::optional<std::string>("a\nb"));
}

TEST(StripReasoningTest, UnterminatedOpenSwallowsRest) {
  const StrippedText r = StripReasoning("Answer first <think>never closed");
  EXPECT_EQ(r.answer, "Answer first");
  EXPECT_EQ(r.reasoning, std::optional<std::string>("never closed"));
}

TEST(StripReasoningTest, OrphanCloseTakesPrefix) {
  const StrippedText r = StripReasoning("thinking aloud\n</think>\nfinal");
  EXPECT_EQ(r.answer, "final");
  EXPECT_EQ(r.reasoning, std::optional<std::string>("thinking aloud"));
}

TEST(StripReasoningTest, EmptySpan) {
  const StrippedText r = StripReasoning("<think></think>done");
  EXPECT_EQ(r.answer, "done");
  ASSERT_TRUE(r.reasoning.has_value());
  EXPECT_EQ(*r.reasoning, "");
}

TEST(StripReasoningTest, AnswerIsIdempotentOnRandomMixes) {
  const std::vector<std::string> pieces = {"<think>", "</think>", "a", " ", "\n",
                                           "b c", "<", ">", "think", "x\n\n"};
  std::mt19937 rng(20260501);
  std::uniform_int_distribution<size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> length(0, 12);
  for (int i = 0; i < 2000; ++i) {
    std::string raw;
    for (int n = length(rng); n > 0; --n) raw += pieces[pick(rng)];
    const StrippedText once = StripReasoning(raw);
    EXPECT_EQ(StripReasoning(once.answer).answer, once.answer) << "raw: " << raw;
    EXPECT_EQ(once.answer.find("<think>"), std::string::npos) << raw;
    EXPECT_EQ(once.answer.find("</think>"), std::string::npos) << raw;
  }
}

}  // namespace
}  // namespace oragent
