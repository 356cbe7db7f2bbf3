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

#include "oragent/commands.h"

#include <filesystem>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "fixture_run.h"
#include "oragent/benchmark.h"
#include "oragent/file_util.h"
#include "oragent/run_record.h"
#include "test_util.h"

namespace oragent {
namespace {

using ::oragent::testing::FixtureReplayConfig;
using ::oragent::testing::TempDir;
using ::oragent::testing::TestData;
using ::oragent::testing::TreeContents;
using ::testing::HasSubstr;

struct Output {
  std::ostringstream out, err;
};

int RunWith(const RunConfig& config, Output& o) { return RunCommand(config, o.out, o.err); }

TEST(RunCommandTest, FixtureReplay) {
  TempDir tmp;
  Output o;
  ASSERT_EQ(RunWith(FixtureReplayConfig(tmp.path() / "run"), o), kExitOk) << o.err.str();
  EXPECT_THAT(o.out.str(), HasSubstr("problems: 5  solved: 5  correct: 4/5"));
  EXPECT_THAT(o.out.str(), HasSubstr("accuracy: 80.00%"));
  EXPECT_THAT(o.out.str(), HasSubstr("code error rate: 0.00%"));
  EXPECT_THAT(o.err.str(), HasSubstr("[oragent] p2: solved"));

  const RunDirectory dir(tmp.path() / "run");
  auto records = dir.LoadRecords();
  ASSERT_TRUE(records.ok());
  ASSERT_EQ(records->size(), 5u);
  EXPECT_EQ(records->at("p2").attempts.size(), 2u);
  EXPECT_EQ(records->at("p3").attempts[0].outcome.error().kind, ErrorKind::kProtocolMissing);
  EXPECT_EQ(std::get<Solved>(records->at("p4").final).objective, 8.0);
  EXPECT_EQ(ReplayStore(dir.store_dir()).ListKeys().size(), 12u);

  const nlohmann::json manifest = nlohmann::json::parse(*ReadFile(dir.manifest_path()));
  EXPECT_EQ(manifest["format"], "oragent-run-v1");
  EXPECT_EQ(manifest["backend"], "replay");
  EXPECT_FALSE(manifest.contains("out_dir"));
  EXPECT_TRUE(std::filesystem::exists(dir.volatile_dir() / "run.json"));
}

TEST(RunCommandTest, ReplayedRunsAreIdenticalAcrossWorkerCounts) {
  TempDir tmp;
  RunConfig a = FixtureReplayConfig(tmp.path() / "a");
  RunConfig b = FixtureReplayConfig(tmp.path() / "b");
  b.workers = 4;
  Output oa, ob;
  ASSERT_EQ(RunWith(a, oa), kExitOk) << oa.err.str();
  ASSERT_EQ(RunWith(b, ob), kExitOk) << ob.err.str();
  EXPECT_EQ(TreeContents(a.out_dir), TreeContents(b.out_dir));
  EXPECT_NE(*ReadFile(a.out_dir / "volatile" / "run.json"),
            *ReadFile(b.out_dir / "volatile" / "run.json"));
}

TEST(RunCommandTest, ResumeAndManifestMismatch) {
  TempDir tmp;
  RunConfig config = FixtureReplayConfig(tmp.path() / "run");
  Output first;
  ASSERT_EQ(RunWith(config, first), kExitOk);
  const auto before = TreeContents(config.out_dir);

  Output again;
  ASSERT_EQ(RunWith(config, again), kExitOk) << again.err.str();
  EXPECT_THAT(again.err.str(), HasSubstr("resuming: 5 of 5"));
  EXPECT_EQ(TreeContents(config.out_dir), before);

  // Losing one record re-runs just that problem.
  std::filesystem::remove(RunDirectory(config.out_dir).RecordPath("p3"));
  Output partial;
  ASSERT_EQ(RunWith(config, partial), kExitOk);
  EXPECT_THAT(partial.err.str(), HasSubstr("resuming: 4 of 5"));
  EXPECT_EQ(TreeContents(config.out_dir), before);

  RunConfig changed = config;
  changed.max_attempts = 3;
  Output mismatch;
  EXPECT_EQ(RunWith(changed, mismatch), kExitFailure);
  EXPECT_THAT(mismatch.err.str(), HasSubstr("manifest.json"));
}

TEST(RunCommandTest, ConfigurationErrors) {
  TempDir tmp;
  RunConfig live = FixtureReplayConfig(tmp.path() / "x");
  live.backend = BackendKind::kLive;
  live.sandbox.fixture_runtime = TestData() / "runtime_probe";
  Output o1;
  EXPECT_EQ(RunWith(live, o1), kExitFailure);
  EXPECT_THAT(o1.err.str(), HasSubstr("--fixture-runtime"));

  RunConfig no_store = FixtureReplayConfig(tmp.path() / "y");
  no_store.replay_dir.reset();
  Output o2;
  EXPECT_EQ(RunWith(no_store, o2), kExitFailure);
  EXPECT_THAT(o2.err.str(), HasSubstr("--replay-dir"));

  RunConfig other_model = FixtureReplayConfig(tmp.path() / "z");
  other_model.generation.model_id = "another-model";
  Output o3;
  EXPECT_EQ(RunWith(other_model, o3), kExitFailure);
  EXPECT_THAT(o3.err.str(), HasSubstr("replay miss"));

  RunConfig bad_interp = FixtureReplayConfig(tmp.path() / "w");
  bad_interp.sandbox.interpreter = {"no-such-python-xyz"};
  Output o4;
  EXPECT_EQ(RunWith(bad_interp, o4), kExitFailure);
  EXPECT_THAT(o4.err.str(), HasSubstr("not found on PATH"));
}

TEST(EvalCommandTest, TablesAndJson) {
  TempDir tmp;
  RunConfig full = FixtureReplayConfig(tmp.path() / "full");
  Output run_out;
  ASSERT_EQ(RunWith(full, run_out), kExitOk);

  EvalOptions options;
  options.run_dirs = {full.out_dir, full.out_dir};
  options.groups = {"agent", "baseline"};
  options.out_prefix = tmp.path() / "report";
  Output o;
  ASSERT_EQ(EvalCommand(options, o.out, o.err), kExitOk) << o.err.str();
  EXPECT_THAT(o.out.str(), HasSubstr("Accuracy (%)"));
  EXPECT_THAT(o.out.str(), HasSubstr("Code error rate (%)"));
  EXPECT_THAT(o.out.str(), HasSubstr("Math model accuracy (%)"));
  EXPECT_THAT(o.out.str(), HasSubstr("80.00"));
  EXPECT_THAT(o.out.str(), HasSubstr("fixture-reasoner"));

  const nlohmann::json doc = nlohmann::json::parse(*ReadFile(tmp.path() / "report.json"));
  ASSERT_EQ(doc["runs"].size(), 2u);
  EXPECT_DOUBLE_EQ(doc["runs"][0]["accuracy"].get<double>(), 0.8);
  EXPECT_DOUBLE_EQ(doc["runs"][0]["code_error_rate"].get<double>(), 0.0);
  EXPECT_EQ(doc["runs"][0]["counts"]["correct"], 4);
  EXPECT_EQ(doc["summary"]["accuracy_percent"]["gap"]["text"], "0.00");
  EXPECT_EQ(*ReadFile(tmp.path() / "report.txt"), o.out.str());

  // A tighter tolerance changes nothing for exact answers; a corpus with a
  // different truth for p4 flips it.
  std::string corpus = *ReadFile(TestData() / "fixture" / "corpus.jsonl");
  const size_t at = corpus.find("\"answer\": 7");
  ASSERT_NE(at, std::string::npos);
  corpus.replace(at, 11, "\"answer\": 8");
  ASSERT_TRUE(WriteFileAtomically(tmp.path() / "alt.jsonl", corpus).ok());
  EvalOptions alt;
  alt.run_dirs = {full.out_dir};
  alt.corpus_path = tmp.path() / "alt.jsonl";
  Output o2;
  ASSERT_EQ(EvalCommand(alt, o2.out, o2.err), kExitOk) << o2.err.str();
  EXPECT_THAT(o2.out.str(), HasSubstr("100.00"));
}

TEST(EvalCommandTest, Errors) {
  TempDir tmp;
  EvalOptions none;
  Output o;
  EXPECT_EQ(EvalCommand(none, o.out, o.err), kExitFailure);
  EvalOptions missing;
  missing.run_dirs = {tmp.path() / "nope"};
  EXPECT_EQ(EvalCommand(missing, o.out, o.err), kExitFailure);
  EvalOptions groups;
  groups.run_dirs = {tmp.path()};
  groups.groups = {"a", "b"};
  EXPECT_EQ(EvalCommand(groups, o.out, o.err), kExitFailure);
}

TEST(ValidateCommandTest, FixtureAndBroken) {
  Output o;
  EXPECT_EQ(ValidateCommand(TestData() / "fixture" / "corpus.jsonl", o.out, o.err), kExitOk);
  EXPECT_THAT(o.out.str(), HasSubstr("corpus: 5 problems, 5 with ground truth"));
  TempDir tmp;
  ASSERT_TRUE(WriteFileAtomically(tmp.path() / "bad.jsonl",
                                  "{\"id\": \"a\", \"question\": \"  \", \"answer\": 1}\n")
                  .ok());
  Output b;
  EXPECT_EQ(ValidateCommand(tmp.path() / "bad.jsonl", b.out, b.err), kExitFailure);
  EXPECT_THAT(b.err.str(), HasSubstr("bad:1: field 'question'"));
}

TEST(ReplayCheckCommandTest, CleanAndMutated) {
  TempDir tmp;
  RunConfig config = FixtureReplayConfig(tmp.path() / "run");
  Output run_out;
  ASSERT_EQ(RunWith(config, run_out), kExitOk);

  Output ok;
  ASSERT_EQ(ReplayCheckCommand({config.out_dir, 2}, ok.out, ok.err), kExitOk) << ok.out.str();
  EXPECT_THAT(ok.out.str(), HasSubstr("replay-check: OK, 5 problems reproduced from 12"));

  // Flip one byte in one stored reply.
  const ReplayStore store(RunDirectory(config.out_dir).store_dir());
  const std::string key = store.ListKeys().front();
  std::string text = *ReadFile(store.EntryPath(key));
  const size_t at = text.find("\"raw_text\": \"") + 14;
  text[at] = text[at] == 'x' ? 'y' : 'x';
  ASSERT_TRUE(WriteFileAtomically(store.EntryPath(key), text).ok());
  Output bad;
  EXPECT_EQ(ReplayCheckCommand({config.out_dir, 1}, bad.out, bad.err), kExitFailure);
  EXPECT_THAT(bad.out.str(), HasSubstr("store entry " + key));
  EXPECT_THAT(bad.out.str(), HasSubstr("replay-check: FAILED"));

  // An edited record is a divergence.
  std::filesystem::copy(TestData() / "fixture" / "store", store.dir(),
                        std::filesystem::copy_options::overwrite_existing);
  const std::filesystem::path p1 = RunDirectory(config.out_dir).RecordPath("p1");
  std::string rec = *ReadFile(p1);
  rec.insert(rec.size() - 2, " ");
  ASSERT_TRUE(WriteFileAtomically(p1, rec).ok());
  Output diverged;
  EXPECT_EQ(ReplayCheckCommand({config.out_dir, 1}, diverged.out, diverged.err), kExitFailure);
  EXPECT_THAT(diverged.out.str(), HasSubstr("first divergent problem: p1"));
}

}  // namespace
}  // namespace oragent
