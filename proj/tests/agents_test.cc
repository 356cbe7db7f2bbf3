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

#include "oragent/agents.h"

#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oragent/result_protocol.h"
#include "test_util.h"

namespace oragent {
namespace {

using ::oragent::testing::FakeBackend;
using ::testing::HasSubstr;
using ::testing::Not;

ProblemInstance Problem() {
  return ProblemInstance{"p1", "A factory makes chairs and tables.", 36.0, std::nullopt};
}

MathModelDoc Model() { return MathModelDoc{"p1", "max 3x + 4y", "k-math"}; }

CodeArtifact Code() {
  CodeArtifact c;
  c.problem_id = "p1";
  c.source = "print('OPTIMAL_VALUE=1')";
  c.transcript_key = "k-code";
  return c;
}

ErrorReport Error() {
  return ErrorReport{ErrorKind::kNonzeroExit, 1, "Traceback: NameError", "partial"};
}

TEST(PromptTest, MathPrompt) {
  absl::StatusOr<Transcript> t = BuildMathPrompt(Problem(), DefaultTemplates());
  ASSERT_TRUE(t.ok());
  ASSERT_EQ(t->messages.size(), 2u);
  EXPECT_EQ(t->messages[0].role, Role::kSystem);
  EXPECT_EQ(t->messages[1].role, Role::kUser);
  EXPECT_THAT(t->messages[1].content, HasSubstr("A factory makes chairs and tables."));
  EXPECT_TRUE(ValidateTranscript(*t).ok());
  EXPECT_EQ(*t, *BuildMathPrompt(Problem(), DefaultTemplates()));
}

TEST(PromptTest, CodePromptCarriesModelSolverAndProtocol) {
  PromptContext ctx;
  ctx.solver_name = "HiGHS";
  absl::StatusOr<Transcript> t = BuildCodePrompt(Model(), DefaultTemplates(), ctx);
  ASSERT_TRUE(t.ok());
  const std::string& user = t->messages[1].content;
  EXPECT_THAT(user, HasSubstr("max 3x + 4y"));
  EXPECT_THAT(user, HasSubstr("HiGHS"));
  EXPECT_THAT(user, HasSubstr(ResultProtocolSpec()));
}

TEST(PromptTest, CodeRepairOmitsModel) {
  absl::StatusOr<Transcript> t =
      BuildCodeRepairPrompt(Code(), Error(), DefaultTemplates(), PromptContext{});
  ASSERT_TRUE(t.ok());
  ASSERT_EQ(t->messages.size(), 2u);
  const std::string& user = t->messages[1].content;
  EXPECT_THAT(user, HasSubstr("print('OPTIMAL_VALUE=1')"));
  EXPECT_THAT(user, HasSubstr("NameError"));
  EXPECT_THAT(user, Not(HasSubstr("max 3x + 4y")));
}

TEST(PromptTest, MathRepairIncludesModelCodeAndError) {
  absl::StatusOr<Transcript> t = BuildMathRepairPrompt(Model(), Code(), Error(),
                                                       DefaultTemplates(), PromptContext{});
  ASSERT_TRUE(t.ok());
  const std::string& user = t->messages[1].content;
  EXPECT_THAT(user, HasSubstr("max 3x + 4y"));
  EXPECT_THAT(user, HasSubstr("print('OPTIMAL_VALUE=1')"));
  EXPECT_THAT(user, HasSubstr("NameError"));
}

TEST(PromptTest, BracesInValuesAreNotExpanded) {
  MathModelDoc m = Model();
  m.body = "\\sum_{i} x_{i} {problem}";
  absl::StatusOr<Transcript> t = BuildCodePrompt(m, DefaultTemplates(), PromptContext{});
  ASSERT_TRUE(t.ok());
  EXPECT_THAT(t->messages[1].content, HasSubstr(m.body));
}

TEST(FormatErrorTest, KindsAndStreams) {
  EXPECT_EQ(FormatErrorForPrompt(ErrorReport{ErrorKind::kTimeout, std::nullopt, "", ""}),
            "The program was stopped after exceeding the time limit.");
  const std::string text = FormatErrorForPrompt(Error());
  EXPECT_THAT(text, HasSubstr("exited with code 1"));
  EXPECT_THAT(text, HasSubstr("Traceback: NameError"));
  EXPECT_THAT(text, HasSubstr("partial"));
  ErrorReport big = Error();
  big.stderr_excerpt = std::string(10000, 'e') + "TAIL";
  const std::string bounded = FormatErrorForPrompt(big);
  EXPECT_THAT(bounded, HasSubstr("TAIL"));
  EXPECT_LT(bounded.size(), kStderrExcerptChars + kStdoutExcerptChars + 300);
}

TEST(ExtractCodeTest, Cases) {
  EXPECT_EQ(*ExtractCodeBlock("Here:\n```python\nx = 1\nprint(x)\n```\nDone."),
            "x = 1\nprint(x)");
  EXPECT_EQ(*ExtractCodeBlock("```\na = 1\n```\ntext\n```py\nb = 22\nc = 3\n```"),
            "b = 22\nc = 3");
  EXPECT_EQ(*ExtractCodeBlock("```\nab\n```\n```\ncd\n```"), "ab");
  EXPECT_EQ(*ExtractCodeBlock("```python\nx = 1\n"), "x = 1");
  EXPECT_EQ(*ExtractCodeBlock("import math\nprint(math.pi)\n"), "import math\nprint(math.pi)");
  EXPECT_EQ(*ExtractCodeBlock("# solve\nx = 2\n"), "# solve\nx = 2");
  EXPECT_EQ(ExtractCodeBlock("The optimum is 36.").status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(ExtractCodeBlock("```\n```").status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(AgentsTest, RunAgentsThroughGateway) {
  FakeBackend backend([](const Transcript& t) -> absl::StatusOr<std::string> {
    if (t.messages[1].content.find("chairs") != std::string::npos) {
      return "<think>plan</think>## Model\nmax 3x+4y";
    }
    return "```python\nprint('OPTIMAL_VALUE=36')\n```";
  });
  AgentDeps deps;
  deps.gateway = &backend;
  deps.templates = &DefaultTemplates();
  absl::StatusOr<MathModelDoc> m = RunMathAgent(Problem(), deps);
  ASSERT_TRUE(m.ok()) << m.status();
  EXPECT_EQ(m->body, "## Model\nmax 3x+4y");
  EXPECT_EQ(m->problem_id, "p1");
  EXPECT_EQ(m->transcript_key, TranscriptKey(backend.seen()[0], deps.generation));

  absl::StatusOr<CodeArtifact> c = RunCodeAgent(*m, deps);
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->source, "print('OPTIMAL_VALUE=36')");
  EXPECT_EQ(c->attempt_index, 0);
  EXPECT_EQ(c->provenance, Provenance::kInitial);

  absl::StatusOr<CodeArtifact> r = RunCodeRepair(*c, Error(), 2, deps);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->attempt_index, 2);
  EXPECT_EQ(r->provenance, Provenance::kCodeRepair);
  absl::StatusOr<CodeArtifact> mr = RunMathRepair(*m, *c, Error(), 4, deps);
  ASSERT_TRUE(mr.ok());
  EXPECT_EQ(mr->attempt_index, 4);
  EXPECT_EQ(mr->provenance, Provenance::kMathRepair);
}

TEST(AgentsTest, ContentAndGatewayFailures) {
  FakeBackend empty([](const Transcript&) -> absl::StatusOr<std::string> {
    return "<think>only thoughts</think>";
  });
  AgentDeps deps;
  deps.gateway = &empty;
  deps.templates = &DefaultTemplates();
  EXPECT_EQ(RunMathAgent(Problem(), deps).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(RunCodeAgent(Model(), deps).status().code(),
            absl::StatusCode::kFailedPrecondition);

  FakeBackend down([](const Transcript&) -> absl::StatusOr<std::string> {
    return absl::UnavailableError("down");
  });
  deps.gateway = &down;
  EXPECT_EQ(RunDirectAgent(Problem(), deps).status().code(),
            absl::StatusCode::kUnavailable);
}

}  // namespace
}  // namespace oragent
