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

// Scoring of run records against corpus ground truth.
//
//   accuracy            = correct / labeled
//   code_error_rate     = run_failed / records
//   math_model_accuracy = correct / runnable   (labeled records only)
//
// A record is runnable when it solved or its program reached a solver verdict
// (infeasible, unbounded); otherwise it is a code error. Records whose problem
// has no ground truth count toward code_error_rate only.

#ifndef ORAGENT_EVALUATOR_H_
#define ORAGENT_EVALUATOR_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "oragent/corpus.h"
#include "oragent/debug_loop.h"

namespace oragent {

struct JudgeConfig {
  double tolerance = 0.1;
};

// |predicted - truth| < tolerance. Differences within a few ulps of the
// tolerance are floating-point noise and count as equal to it, so a
// prediction exactly one tolerance away is never correct. InvalidArgument on
// non-finite input or a non-positive tolerance.
absl::StatusOr<bool> Judge(double predicted, double truth, const JudgeConfig& config);

struct RecordVerdict {
  bool solved = false;
  bool runnable = false;
  std::optional<bool> correct;  // absent when the problem is unlabeled
};

absl::StatusOr<RecordVerdict> ClassifyRecord(const RunRecord& record,
                                             const ProblemInstance& problem,
                                             const JudgeConfig& config);

struct MetricCounts {
  int records = 0;
  int labeled = 0;
  int unlabeled = 0;
  int solved = 0;
  int correct = 0;
  int runnable = 0;          // labeled and runnable
  int run_failed = 0;        // all records
  bool operator==(const MetricCounts&) const = default;
};

struct MetricsReport {
  MetricCounts counts;
  double accuracy = 0.0;
  double code_error_rate = 0.0;
  double math_model_accuracy = 0.0;  // 0 when nothing is runnable
};

// Every record must name a problem of `corpus`, at most once.
absl::StatusOr<MetricsReport> Evaluate(const std::vector<RunRecord>& records,
                                       const Corpus& corpus,
                                       const JudgeConfig& config);

}  // namespace oragent

#endif  // ORAGENT_EVALUATOR_H_
