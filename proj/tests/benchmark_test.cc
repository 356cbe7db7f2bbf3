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

#include "oragent/benchmark.h"

#include <algorithm>
#include <atomic>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oragent/run_record.h"
#include "oragent/templates.h"
#include "test_util.h"

namespace oragent {
namespace {

using ::oragent::testing::FailedWith;
using ::oragent::testing::FakeBackend;
using ::oragent::testing::FakeExecutor;
using ::oragent::testing::Succeeded;
using ::oragent::testing::TempDir;
using ::testing::HasSubstr;
using ::testing::StartsWith;

Corpus MakeCorpus(int n) {
  Corpus c;
  c.name = "synthetic";
  for (int i = 0; i < n; ++i) {
    c.problems.push_back(ProblemInstance{absl::StrCat("q", i),
                                         absl::StrCat("problem number ", i, std::string(i, '!')),
                                         static_cast<double>(i), std::nullopt});
  }
  return c;
}

// Deterministic in the transcript; programs fail when their length is a
// multiple of three, which sends some problems through repairs.
FakeBackend::Script Replies() {
  return [](const Transcript& t) -> absl::StatusOr<std::string> {
    const std::string& user = t.messages.back().content;
    if (user.find("missing") != std::string::npos) {
      return absl::NotFoundError("replay miss: scripted");
    }
    return absl::StrCat("```python\nprint(", user.size() % 97, ")\n```");
  };
}

ExecutionOutcome ByLength(const CodeArtifact& code) {
  if (code.source.size() % 3 == 0) return FailedWith(ErrorKind::kNonzeroExit, code.source);
  return Succeeded(static_cast<double>(code.source.size()));
}

struct Sweep {
  FakeBackend backend{Replies()};
  FakeExecutor executor{ByLength};
  PipelineDeps deps;
  Sweep() {
    deps.agents.gateway = &backend;
    deps.agents.templates = &DefaultTemplates();
    deps.executor = &executor;
  }
};

std::vector<std::string> Serialized(const std::vector<RunRecord>& records) {
  std::vector<std::string> out;
  for (const RunRecord& r : records) out.push_back(SerializeRunRecord(r));
  return out;
}

TEST(RunBenchmarkTest, CorpusOrderAndWorkerInvariance) {
  const Corpus corpus = MakeCorpus(12);
  Sweep one;
  absl::StatusOr<std::vector<RunRecord>> serial =
      RunBenchmark(corpus, PipelineMode::kFull, one.deps, SweepOptions{});
  ASSERT_TRUE(serial.ok()) << serial.status();
  ASSERT_EQ(serial->size(), 12u);
  for (int i = 0; i < 12; ++i) EXPECT_EQ((*serial)[i].problem_id, corpus.problems[i].id);

  for (int workers : {2, 4, 16}) {
    Sweep many;
    SweepOptions options;
    options.workers = workers;
    std::atomic<int> callbacks{0};
    options.on_record = [&](const RunRecord&) {
      ++callbacks;
      return absl::OkStatus();
    };
    absl::StatusOr<std::vector<RunRecord>> parallel =
        RunBenchmark(corpus, PipelineMode::kFull, many.deps, options);
    ASSERT_TRUE(parallel.ok());
    EXPECT_EQ(Serialized(*parallel), Serialized(*serial)) << workers;
    EXPECT_EQ(callbacks.load(), 12);
  }
}

TEST(RunBenchmarkTest, PermutationInvariance) {
  const Corpus corpus = MakeCorpus(9);
  Corpus reversed = corpus;
  std::reverse(reversed.problems.begin(), reversed.problems.end());
  Sweep a, b;
  absl::StatusOr<std::vector<RunRecord>> forward =
      RunBenchmark(corpus, PipelineMode::kFull, a.deps, SweepOptions{});
  SweepOptions options;
  options.workers = 3;
  absl::StatusOr<std::vector<RunRecord>> backward =
      RunBenchmark(reversed, PipelineMode::kFull, b.deps, options);
  ASSERT_TRUE(forward.ok() && backward.ok());
  std::vector<std::string> x = Serialized(*forward), y = Serialized(*backward);
  std::reverse(y.begin(), y.end());
  EXPECT_EQ(x, y);
}

TEST(RunBenchmarkTest, ResumeSkipsCompleted) {
  const Corpus corpus = MakeCorpus(6);
  Sweep first;
  absl::StatusOr<std::vector<RunRecord>> full =
      RunBenchmark(corpus, PipelineMode::kFull, first.deps, SweepOptions{});
  ASSERT_TRUE(full.ok());

  Sweep second;
  SweepOptions options;
  for (const RunRecord& r : *full) {
    if (r.problem_id != "q3") options.completed.emplace(r.problem_id, r);
  }
  std::vector<std::string> fresh;
  options.on_record = [&](const RunRecord& r) {
    fresh.push_back(r.problem_id);
    return absl::OkStatus();
  };
  absl::StatusOr<std::vector<RunRecord>> resumed =
      RunBenchmark(corpus, PipelineMode::kFull, second.deps, options);
  ASSERT_TRUE(resumed.ok());
  EXPECT_EQ(fresh, std::vector<std::string>{"q3"});
  EXPECT_EQ(Serialized(*resumed), Serialized(*full));
  for (const Transcript& t : second.backend.seen()) {
    EXPECT_THAT(t.messages.back().content, ::testing::Not(HasSubstr("problem number 1")));
  }
}

TEST(RunBenchmarkTest, FatalErrorAbortsWithProblemId) {
  Corpus corpus = MakeCorpus(5);
  corpus.problems[2].description = "missing data";
  Sweep s;
  std::vector<std::string> done;
  SweepOptions options;
  options.on_record = [&](const RunRecord& r) {
    done.push_back(r.problem_id);
    return absl::OkStatus();
  };
  absl::StatusOr<std::vector<RunRecord>> r =
      RunBenchmark(corpus, PipelineMode::kFull, s.deps, options);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kNotFound);
  EXPECT_THAT(std::string(r.status().message()), StartsWith("problem q2: "));
  EXPECT_EQ(done, (std::vector<std::string>{"q0", "q1"}));
}

TEST(RunBenchmarkTest, WriterErrorAborts) {
  const Corpus corpus = MakeCorpus(4);
  Sweep s;
  SweepOptions options;
  options.on_record = [](const RunRecord&) { return absl::InternalError("disk full"); };
  absl::StatusOr<std::vector<RunRecord>> r =
      RunBenchmark(corpus, PipelineMode::kFull, s.deps, options);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kInternal);
  EXPECT_THAT(std::string(r.status().message()), HasSubstr("disk full"));
}

TEST(RunDirectoryTest, WriteLoadAndTimings) {
  TempDir tmp;
  RunDirectory dir(tmp.path() / "run");
  const Corpus corpus = MakeCorpus(3);
  Sweep s;
  absl::StatusOr<std::vector<RunRecord>> records =
      RunBenchmark(corpus, PipelineMode::kFull, s.deps, SweepOptions{});
  ASSERT_TRUE(records.ok());
  for (const RunRecord& r : *records) {
    ASSERT_TRUE(dir.WriteRecord(r).ok());
    ASSERT_TRUE(dir.AppendTiming(r).ok());
  }
  absl::StatusOr<std::map<std::string, RunRecord, std::less<>>> loaded = dir.LoadRecords();
  ASSERT_TRUE(loaded.ok()) << loaded.status();
  ASSERT_EQ(loaded->size(), 3u);
  EXPECT_EQ(SerializeRunRecord(loaded->at("q1")), SerializeRunRecord((*records)[1]));
  EXPECT_TRUE(std::filesystem::exists(dir.volatile_dir() / "timings.jsonl"));

  // A record whose file name disagrees with its id is rejected.
  std::filesystem::copy_file(dir.RecordPath("q1"), dir.records_dir() / "zz.json");
  EXPECT_EQ(dir.LoadRecords().status().code(), absl::StatusCode::kDataLoss);
}

TEST(RunDirectoryTest, EmptyWhenNoRecords) {
  TempDir tmp;
  RunDirectory dir(tmp.path());
  absl::StatusOr<std::map<std::string, RunRecord, std::less<>>> loaded = dir.LoadRecords();
  ASSERT_TRUE(loaded.ok());
  EXPECT_TRUE(loaded->empty());
}

}  // namespace
}  // namespace oragent
