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

#include "oragent/evaluator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "absl/strings/str_cat.h"

namespace oragent {
namespace {

constexpr double kNoiseUlps = 4.0;

double Ratio(int num, int den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

absl::StatusOr<bool> Judge(double predicted, double truth, const JudgeConfig& config) {
  if (!std::isfinite(predicted) || !std::isfinite(truth)) {
    return absl::InvalidArgumentError("judge: non-finite value");
  }
  if (!(config.tolerance > 0.0) || !std::isfinite(config.tolerance)) {
    return absl::InvalidArgumentError("judge: tolerance must be positive");
  }
  const double scale =
      std::max({std::abs(predicted), std::abs(truth), config.tolerance});
  const double noise = kNoiseUlps * std::numeric_limits<double>::epsilon() * scale;
  return std::abs(predicted - truth) < config.tolerance - noise;
}

absl::StatusOr<RecordVerdict> ClassifyRecord(const RunRecord& record,
                                             const ProblemInstance& problem,
                                             const JudgeConfig& config) {
  if (record.problem_id != problem.id) {
    return absl::InvalidArgumentError(absl::StrCat(
        "record for '", record.problem_id, "' judged against '", problem.id, "'"));
  }
  RecordVerdict v;
  if (const Solved* s = std::get_if<Solved>(&record.final)) {
    v.solved = true;
    v.runnable = true;
    if (problem.ground_truth.has_value()) {
      absl::StatusOr<bool> ok = Judge(s->objective, *problem.ground_truth, config);
      if (!ok.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat("problem ", problem.id, ": ", ok.status().message()));
      }
      v.correct = *ok;
    }
  } else {
    v.runnable = ReachedSolverVerdict(std::get<Failed>(record.final).error.kind);
    if (problem.ground_truth.has_value()) v.correct = false;
  }
  return v;
}

absl::StatusOr<MetricsReport> Evaluate(const std::vector<RunRecord>& records,
                                       const Corpus& corpus,
                                       const JudgeConfig& config) {
  MetricsReport report;
  MetricCounts& c = report.counts;
  std::set<std::string, std::less<>> seen;
  for (const RunRecord& record : records) {
    const ProblemInstance* problem = corpus.Find(record.problem_id);
    if (problem == nullptr) {
      return absl::NotFoundError(absl::StrCat("record for unknown problem '",
                                              record.problem_id, "'"));
    }
    if (!seen.insert(record.problem_id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate record for problem '", record.problem_id, "'"));
    }
    absl::StatusOr<RecordVerdict> v = ClassifyRecord(record, *problem, config);
    if (!v.ok()) return v.status();
    ++c.records;
    if (v->solved) ++c.solved;
    if (!v->runnable) ++c.run_failed;
    if (!v->correct.has_value()) {
      ++c.unlabeled;
      continue;
    }
    ++c.labeled;
    if (v->runnable) ++c.runnable;
    if (*v->correct) ++c.correct;
  }
  report.accuracy = Ratio(c.correct, c.labeled);
  report.code_error_rate = Ratio(c.run_failed, c.records);
  report.math_model_accuracy = Ratio(c.correct, c.runnable);
  return report;
}

}  // namespace oragent
