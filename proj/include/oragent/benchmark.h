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

// Corpus sweeps and the run directory they persist into.
//
//   <run>/manifest.json      configuration snapshot, written before any work
//   <run>/corpus.jsonl       the corpus as run
//   <run>/templates.json     the prompt templates as run
//   <run>/records/<id>.json  one RunRecord per finished problem
//   <run>/store/<key>.json   every chat exchange used (replay store)
//   <run>/volatile/          wall-clock data; differs between identical runs

#ifndef ORAGENT_BENCHMARK_H_
#define ORAGENT_BENCHMARK_H_

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oragent/corpus.h"
#include "oragent/debug_loop.h"

namespace oragent {

struct SweepOptions {
  int workers = 1;
  // Problems with a record here are not re-run; the record is reused.
  std::map<std::string, RunRecord, std::less<>> completed;
  // Invoked once per newly finished problem, never concurrently.
  std::function<absl::Status(const RunRecord&)> on_record;
};

// Runs every problem of `corpus` and returns the records in corpus order.
// `deps` must be safe to share between workers. A fatal status from any
// problem stops the sweep (no new problems start) and is returned once the
// in-flight problems finish; the error of the earliest such problem in
// corpus order wins. Records already handed to on_record stay valid, so a
// later sweep with them in `completed` resumes.
absl::StatusOr<std::vector<RunRecord>> RunBenchmark(const Corpus& corpus,
                                                    PipelineMode mode,
                                                    const PipelineDeps& deps,
                                                    const SweepOptions& options);

class RunDirectory {
 public:
  explicit RunDirectory(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path manifest_path() const { return root_ / "manifest.json"; }
  std::filesystem::path corpus_path() const { return root_ / "corpus.jsonl"; }
  std::filesystem::path templates_path() const { return root_ / "templates.json"; }
  std::filesystem::path records_dir() const { return root_ / "records"; }
  std::filesystem::path store_dir() const { return root_ / "store"; }
  std::filesystem::path volatile_dir() const { return root_ / "volatile"; }
  std::filesystem::path RecordPath(absl::string_view problem_id) const;

  absl::Status WriteRecord(const RunRecord& record) const;
  absl::Status AppendTiming(const RunRecord& record) const;

  // Every record under records/, keyed by problem id. Empty if none.
  absl::StatusOr<std::map<std::string, RunRecord, std::less<>>> LoadRecords() const;

 private:
  std::filesystem::path root_;
};

}  // namespace oragent

#endif  // ORAGENT_BENCHMARK_H_
