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
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>

#include "absl/strings/str_cat.h"
#include "oragent/file_util.h"
#include "oragent/run_record.h"

namespace oragent {

absl::StatusOr<std::vector<RunRecord>> RunBenchmark(const Corpus& corpus,
                                                    PipelineMode mode,
                                                    const PipelineDeps& deps,
                                                    const SweepOptions& options) {
  const size_t n = corpus.problems.size();
  std::vector<std::optional<RunRecord>> results(n);
  std::vector<absl::Status> errors(n);
  std::atomic<size_t> next{0};
  std::atomic<bool> abort{false};
  std::mutex writer;

  auto work = [&] {
    for (;;) {
      if (abort.load()) return;
      const size_t i = next.fetch_add(1);
      if (i >= n) return;
      const ProblemInstance& problem = corpus.problems[i];
      if (auto it = options.completed.find(problem.id);
          it != options.completed.end()) {
        results[i] = it->second;
        continue;
      }
      absl::StatusOr<RunRecord> record = Solve(problem, mode, deps);
      if (!record.ok()) {
        errors[i] = absl::Status(record.status().code(),
                                 absl::StrCat("problem ", problem.id, ": ",
                                              record.status().message()));
        abort.store(true);
        return;
      }
      if (options.on_record) {
        std::lock_guard<std::mutex> lock(writer);
        if (absl::Status s = options.on_record(*record); !s.ok()) {
          errors[i] = s;
          abort.store(true);
          return;
        }
      }
      results[i] = *std::move(record);
    }
  };

  const int workers = std::max(1, std::min<int>(options.workers, std::max<size_t>(n, 1)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  for (const absl::Status& s : errors) {
    if (!s.ok()) return s;
  }
  std::vector<RunRecord> out;
  out.reserve(n);
  for (std::optional<RunRecord>& r : results) out.push_back(*std::move(r));
  return out;
}

std::filesystem::path RunDirectory::RecordPath(absl::string_view problem_id) const {
  return records_dir() / (EncodeFileName(problem_id) + ".json");
}

absl::Status RunDirectory::WriteRecord(const RunRecord& record) const {
  return WriteFileAtomically(RecordPath(record.problem_id),
                             SerializeRunRecord(record));
}

absl::Status RunDirectory::AppendTiming(const RunRecord& record) const {
  std::error_code ec;
  std::filesystem::create_directories(volatile_dir(), ec);
  std::ofstream out(volatile_dir() / "timings.jsonl", std::ios::app);
  out << SerializeTimings(record) << "\n";
  out.flush();
  if (!out) {
    return absl::InternalError(
        absl::StrCat("cannot append to ", (volatile_dir() / "timings.jsonl").string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::map<std::string, RunRecord, std::less<>>>
RunDirectory::LoadRecords() const {
  std::map<std::string, RunRecord, std::less<>> records;
  std::error_code ec;
  if (!std::filesystem::is_directory(records_dir(), ec)) return records;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(records_dir())) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const std::filesystem::path& file : files) {
    absl::StatusOr<std::string> text = ReadFile(file);
    if (!text.ok()) return text.status();
    absl::StatusOr<RunRecord> record = ParseRunRecord(*text);
    if (!record.ok()) {
      return absl::Status(record.status().code(),
                          absl::StrCat(file.string(), ": ", record.status().message()));
    }
    if (file.filename() != RecordPath(record->problem_id).filename()) {
      return absl::DataLossError(absl::StrCat(
          file.string(), ": holds problem '", record->problem_id, "'"));
    }
    std::string id = record->problem_id;
    records.emplace(std::move(id), *std::move(record));
  }
  return records;
}

}  // namespace oragent
