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

#include <map>
#include <memory>
#include <mutex>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/time/clock.h"
#include "absl/time/time.h"
#include "json.hpp"
#include "oragent/aggregate.h"
#include "oragent/benchmark.h"
#include "oragent/evaluator.h"
#include "oragent/file_util.h"
#include "oragent/gateway.h"
#include "oragent/live_backend.h"
#include "oragent/replay_store.h"
#include "oragent/run_record.h"
#include "oragent/templates.h"

namespace oragent {
namespace {

using Json = nlohmann::ordered_json;

int Fail(std::ostream& err, const absl::Status& status) {
  err << "oragent: " << status.ToString() << "\n";
  return kExitFailure;
}

std::string Percent(double fraction) { return FormatFixed(100.0 * fraction); }

std::string Now() {
  return absl::FormatTime(absl::RFC3339_sec, absl::Now(), absl::UTCTimeZone());
}

// Serializes log lines from sandbox and gateway threads.
class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err) {}
  void operator()(absl::string_view line) {
    std::lock_guard<std::mutex> lock(mu_);
    err_ << line << "\n";
  }
  std::function<void(absl::string_view)> Sink() {
    return [this](absl::string_view line) { (*this)(line); };
  }

 private:
  std::ostream& err_;
  std::mutex mu_;
};

std::string DescribeRecord(const RunRecord& record) {
  const int attempts = static_cast<int>(record.attempts.size());
  if (const Solved* s = std::get_if<Solved>(&record.final)) {
    return absl::StrCat("[oragent] ", record.problem_id, ": solved objective=",
                        s->objective, " attempts=", attempts);
  }
  return absl::StrCat("[oragent] ", record.problem_id, ": failed kind=",
                      ErrorKindName(std::get<Failed>(record.final).error.kind),
                      " attempts=", attempts);
}

void PrintSummary(const MetricsReport& report, std::ostream& out) {
  const MetricCounts& c = report.counts;
  out << "problems: " << c.records << "  solved: " << c.solved
      << "  correct: " << c.correct << "/" << c.labeled;
  if (c.unlabeled > 0) out << "  unlabeled: " << c.unlabeled;
  out << "\n";
  out << "accuracy: " << Percent(report.accuracy) << "%\n";
  out << "code error rate: " << Percent(report.code_error_rate) << "%\n";
  out << "math model accuracy: " << Percent(report.math_model_accuracy) << "%\n";
}

std::vector<RunRecord> InCorpusOrder(
    const Corpus& corpus, const std::map<std::string, RunRecord, std::less<>>& by_id) {
  std::vector<RunRecord> records;
  for (const ProblemInstance& p : corpus.problems) {
    if (auto it = by_id.find(p.id); it != by_id.end()) records.push_back(it->second);
  }
  return records;
}

// Writes `contents` to `path` unless an identical file is already there.
// FailedPrecondition when a different file is there.
absl::Status WriteOnce(const std::filesystem::path& path, absl::string_view contents,
                       absl::string_view what) {
  if (std::filesystem::exists(path)) {
    absl::StatusOr<std::string> existing = ReadFile(path);
    if (!existing.ok()) return existing.status();
    if (*existing == contents) return absl::OkStatus();
    return absl::FailedPreconditionError(absl::StrCat(
        path.string(), " belongs to a run with a different ", what,
        "; choose another --out"));
  }
  return WriteFileAtomically(path, contents);
}

struct LoadedRun {
  RunManifest manifest;
  Corpus corpus;
  PromptTemplateSet templates;
};

absl::StatusOr<LoadedRun> LoadRun(const RunDirectory& dir) {
  LoadedRun run;
  absl::StatusOr<std::string> manifest_text = ReadFile(dir.manifest_path());
  if (!manifest_text.ok()) return manifest_text.status();
  absl::StatusOr<RunManifest> manifest = ParseManifest(*manifest_text);
  if (!manifest.ok()) return manifest.status();
  run.manifest = *std::move(manifest);

  absl::StatusOr<std::string> corpus_text = ReadFile(dir.corpus_path());
  if (!corpus_text.ok()) return corpus_text.status();
  if (Sha256Hex(*corpus_text) != run.manifest.corpus_sha256) {
    return absl::DataLossError(
        absl::StrCat(dir.corpus_path().string(), " does not match the manifest"));
  }
  absl::StatusOr<Corpus> corpus = ParseCorpus(run.manifest.corpus_name, *corpus_text);
  if (!corpus.ok()) return corpus.status();
  run.corpus = *std::move(corpus);

  absl::StatusOr<PromptTemplateSet> templates = LoadTemplates(dir.templates_path());
  if (!templates.ok()) return templates.status();
  if (TemplatesHash(*templates) != run.manifest.templates_sha256) {
    return absl::DataLossError(
        absl::StrCat(dir.templates_path().string(), " does not match the manifest"));
  }
  run.templates = *std::move(templates);
  return run;
}

SandboxConfig SandboxFromManifest(const RunManifest& m) {
  SandboxConfig config;
  config.interpreter = m.interpreter;
  if (m.fixture_runtime.has_value()) config.fixture_runtime = *m.fixture_runtime;
  config.limits.wall_timeout = std::chrono::seconds(m.timeout_secs);
  return config;
}

}  // namespace

int RunCommand(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (absl::Status s = ValidateRunConfig(config); !s.ok()) return Fail(err, s);

  absl::StatusOr<Corpus> corpus = LoadCorpus(config.corpus_path);
  if (!corpus.ok()) return Fail(err, corpus.status());
  const std::vector<ValidationFinding> findings = ValidateCorpus(*corpus);
  for (const ValidationFinding& f : findings) {
    err << "[oragent] corpus "
        << (f.severity == FindingSeverity::kError ? "error" : "warning") << ": "
        << f.problem_id << ": " << f.message << "\n";
  }
  if (HasErrors(findings)) {
    return Fail(err, absl::InvalidArgumentError("corpus failed validation"));
  }

  PromptTemplateSet templates = DefaultTemplates();
  if (config.templates_path.has_value()) {
    absl::StatusOr<PromptTemplateSet> loaded = LoadTemplates(*config.templates_path);
    if (!loaded.ok()) return Fail(err, loaded.status());
    templates = *std::move(loaded);
  }

  const std::string corpus_text = SerializeCorpus(*corpus);
  const std::string templates_text = SerializeTemplates(templates);
  RunManifest manifest;
  manifest.version = std::string(ArtifactVersion());
  manifest.mode = config.mode;
  manifest.backend = config.backend;
  manifest.generation = config.generation;
  manifest.solver_name = config.solver_name;
  manifest.templates_sha256 = Sha256Hex(templates_text);
  manifest.corpus_name = corpus->name;
  manifest.corpus_sha256 = Sha256Hex(corpus_text);
  manifest.max_attempts = config.max_attempts;
  manifest.timeout_secs = std::chrono::duration_cast<std::chrono::seconds>(
                              config.sandbox.limits.wall_timeout)
                              .count();
  manifest.interpreter = config.sandbox.interpreter;
  if (config.sandbox.fixture_runtime.has_value()) {
    manifest.fixture_runtime = config.sandbox.fixture_runtime->string();
  }
  manifest.tolerance = config.tolerance;

  const RunDirectory dir(config.out_dir);
  if (absl::Status s = WriteOnce(dir.manifest_path(), SerializeManifest(manifest),
                                 "configuration");
      !s.ok()) {
    return Fail(err, s);
  }
  if (absl::Status s = WriteOnce(dir.corpus_path(), corpus_text, "corpus"); !s.ok()) {
    return Fail(err, s);
  }
  if (absl::Status s = WriteOnce(dir.templates_path(), templates_text, "template set");
      !s.ok()) {
    return Fail(err, s);
  }

  Logger logger(err);
  Sandbox sandbox(config.sandbox, logger.Sink());
  if (absl::Status s = sandbox.CheckInterpreter(); !s.ok()) return Fail(err, s);

  // Backend stack.
  std::unique_ptr<LiveBackend> live;
  std::unique_ptr<ReplayStore> source_store;
  std::unique_ptr<ReplayStore> out_store;
  std::unique_ptr<ChatBackend> backend;
  switch (config.backend) {
    case BackendKind::kLive:
    case BackendKind::kRecord: {
      absl::StatusOr<LiveEndpoint> endpoint = LiveEndpointFromEnv();
      if (!endpoint.ok()) return Fail(err, endpoint.status());
      live = std::make_unique<LiveBackend>(*std::move(endpoint), RetryPolicy{},
                                           SleepFor, logger.Sink());
      if (config.backend == BackendKind::kRecord) {
        out_store = std::make_unique<ReplayStore>(config.replay_dir.value_or(dir.store_dir()));
        backend = std::make_unique<RecordingBackend>(*live, *out_store);
      }
      break;
    }
    case BackendKind::kReplay: {
      source_store = std::make_unique<ReplayStore>(*config.replay_dir);
      std::error_code ec;
      const bool same = std::filesystem::exists(dir.store_dir(), ec) &&
                        std::filesystem::equivalent(*config.replay_dir, dir.store_dir(), ec);
      if (!same) out_store = std::make_unique<ReplayStore>(dir.store_dir());
      backend = std::make_unique<ReplayBackend>(*source_store, out_store.get());
      break;
    }
  }
  ChatBackend* gateway = backend ? backend.get() : live.get();

  absl::StatusOr<std::map<std::string, RunRecord, std::less<>>> completed =
      dir.LoadRecords();
  if (!completed.ok()) return Fail(err, completed.status());
  if (!completed->empty()) {
    err << "[oragent] resuming: " << completed->size() << " of " << corpus->size()
        << " problems already done\n";
  }

  Json run_info;
  run_info["started_at"] = Now();
  run_info["workers"] = config.workers;
  run_info["out_dir"] = config.out_dir.string();
  if (absl::Status s = WriteFileAtomically(dir.volatile_dir() / "run.json",
                                           run_info.dump(2) + "\n");
      !s.ok()) {
    return Fail(err, s);
  }

  PipelineDeps deps;
  deps.agents.gateway = gateway;
  deps.agents.templates = &templates;
  deps.agents.prompt.solver_name = config.solver_name;
  deps.agents.generation = config.generation;
  deps.executor = &sandbox;
  deps.max_attempts = config.max_attempts;

  SweepOptions options;
  options.workers = config.workers;
  options.completed = *std::move(completed);
  options.on_record = [&](const RunRecord& record) -> absl::Status {
    if (absl::Status s = dir.WriteRecord(record); !s.ok()) return s;
    if (absl::Status s = dir.AppendTiming(record); !s.ok()) return s;
    logger(DescribeRecord(record));
    return absl::OkStatus();
  };
  absl::StatusOr<std::vector<RunRecord>> records =
      RunBenchmark(*corpus, config.mode, deps, options);
  if (!records.ok()) return Fail(err, records.status());

  run_info["finished_at"] = Now();
  if (live) run_info["retries"] = live->retries_performed();
  if (absl::Status s = WriteFileAtomically(dir.volatile_dir() / "run.json",
                                           run_info.dump(2) + "\n");
      !s.ok()) {
    return Fail(err, s);
  }

  absl::StatusOr<MetricsReport> report =
      Evaluate(*records, *corpus, JudgeConfig{config.tolerance});
  if (!report.ok()) return Fail(err, report.status());
  PrintSummary(*report, out);
  return kExitOk;
}

int EvalCommand(const EvalOptions& options, std::ostream& out, std::ostream& err) {
  if (options.run_dirs.empty()) {
    return Fail(err, absl::InvalidArgumentError("at least one --run-dir is required"));
  }
  if (!options.groups.empty() && options.groups.size() != options.run_dirs.size()) {
    return Fail(err, absl::InvalidArgumentError(
                         "give one --group per --run-dir, or none"));
  }
  std::optional<Corpus> override_corpus;
  if (options.corpus_path.has_value()) {
    absl::StatusOr<Corpus> c = LoadCorpus(*options.corpus_path);
    if (!c.ok()) return Fail(err, c.status());
    override_corpus = *std::move(c);
  }

  std::vector<Cell> accuracy_cells, error_cells, model_cells;
  Json runs = Json::array();
  for (size_t i = 0; i < options.run_dirs.size(); ++i) {
    const RunDirectory dir(options.run_dirs[i]);
    absl::StatusOr<LoadedRun> run = LoadRun(dir);
    if (!run.ok()) return Fail(err, run.status());
    const Corpus& corpus = override_corpus.has_value() ? *override_corpus : run->corpus;
    absl::StatusOr<std::map<std::string, RunRecord, std::less<>>> by_id =
        dir.LoadRecords();
    if (!by_id.ok()) return Fail(err, by_id.status());
    std::vector<RunRecord> records;
    for (const auto& [id, record] : *by_id) records.push_back(record);
    if (records.size() < corpus.size()) {
      err << "[oragent] warning: " << dir.root().string() << " has records for "
          << records.size() << " of " << corpus.size() << " problems\n";
    }
    const double tolerance = options.tolerance.value_or(run->manifest.tolerance);
    absl::StatusOr<MetricsReport> report =
        Evaluate(InCorpusOrder(corpus, *by_id), corpus, JudgeConfig{tolerance});
    if (!report.ok()) return Fail(err, report.status());
    if (report->counts.records != static_cast<int>(records.size())) {
      return Fail(err, absl::NotFoundError(absl::StrCat(
                           dir.root().string(),
                           " holds records for problems outside the corpus")));
    }

    const std::string group = options.groups.empty()
                                  ? std::string(PipelineModeName(run->manifest.mode))
                                  : options.groups[i];
    const std::string& model = run->manifest.generation.model_id;
    accuracy_cells.push_back({group, model, corpus.name, 100.0 * report->accuracy});
    error_cells.push_back({group, model, corpus.name, 100.0 * report->code_error_rate});
    model_cells.push_back(
        {group, model, corpus.name, 100.0 * report->math_model_accuracy});

    const MetricCounts& c = report->counts;
    Json j;
    j["run_dir"] = dir.root().string();
    j["group"] = group;
    j["model_id"] = model;
    j["corpus_name"] = corpus.name;
    j["mode"] = std::string(PipelineModeName(run->manifest.mode));
    j["tolerance"] = tolerance;
    j["counts"] = {{"records", c.records},   {"labeled", c.labeled},
                   {"unlabeled", c.unlabeled}, {"solved", c.solved},
                   {"correct", c.correct},   {"runnable", c.runnable},
                   {"run_failed", c.run_failed}};
    j["accuracy"] = report->accuracy;
    j["code_error_rate"] = report->code_error_rate;
    j["math_model_accuracy"] = report->math_model_accuracy;
    runs.push_back(std::move(j));
  }

  auto summarize = [](const std::vector<Cell>& cells) {
    Json s;
    std::vector<std::string> groups;
    for (const Cell& c : cells) {
      if (std::find(groups.begin(), groups.end(), c.group) == groups.end()) {
        groups.push_back(c.group);
      }
    }
    Json means = Json::array();
    for (const std::string& g : groups) {
      absl::StatusOr<double> m = GroupMean(cells, g);
      means.push_back({{"group", g}, {"mean", *m}, {"text", FormatFixed(*m)}});
    }
    s["means"] = std::move(means);
    if (groups.size() == 2) {
      absl::StatusOr<double> gap = Gap(cells, groups[0], groups[1]);
      s["gap"] = {{"minuend", groups[0]}, {"subtrahend", groups[1]},
                  {"value", *gap}, {"text", FormatFixed(*gap)}};
    } else {
      s["gap"] = nullptr;
    }
    return s;
  };

  Json doc;
  doc["version"] = std::string(ArtifactVersion());
  doc["runs"] = std::move(runs);
  doc["summary"] = {{"accuracy_percent", summarize(accuracy_cells)},
                    {"code_error_rate_percent", summarize(error_cells)},
                    {"math_model_accuracy_percent", summarize(model_cells)}};

  const std::string text =
      absl::StrCat(RenderTable("Accuracy (%)", accuracy_cells), "\n",
                   RenderTable("Code error rate (%)", error_cells), "\n",
                   RenderTable("Math model accuracy (%)", model_cells));
  out << text;
  if (options.out_prefix.has_value()) {
    const std::string prefix = options.out_prefix->string();
    if (absl::Status s = WriteFileAtomically(prefix + ".json", doc.dump(2) + "\n");
        !s.ok()) {
      return Fail(err, s);
    }
    if (absl::Status s = WriteFileAtomically(prefix + ".txt", text); !s.ok()) {
      return Fail(err, s);
    }
  }
  return kExitOk;
}

int ValidateCommand(const std::filesystem::path& corpus_path, std::ostream& out,
                    std::ostream& err) {
  absl::StatusOr<Corpus> corpus = LoadCorpus(corpus_path);
  if (!corpus.ok()) return Fail(err, corpus.status());
  const std::vector<ValidationFinding> findings = ValidateCorpus(*corpus);
  int labeled = 0;
  for (const ProblemInstance& p : corpus->problems) labeled += p.ground_truth.has_value();
  for (const ValidationFinding& f : findings) {
    out << (f.severity == FindingSeverity::kError ? "error" : "warning") << ": "
        << f.problem_id << ": " << f.message << "\n";
  }
  out << corpus->name << ": " << corpus->size() << " problems, " << labeled
      << " with ground truth\n";
  return HasErrors(findings) ? kExitFailure : kExitOk;
}

int ReplayCheckCommand(const ReplayCheckOptions& options, std::ostream& out,
                       std::ostream& err) {
  const RunDirectory dir(options.run_dir);
  absl::StatusOr<LoadedRun> run = LoadRun(dir);
  if (!run.ok()) return Fail(err, run.status());
  absl::StatusOr<std::map<std::string, RunRecord, std::less<>>> recorded =
      dir.LoadRecords();
  if (!recorded.ok()) return Fail(err, recorded.status());

  std::map<std::string, std::set<std::string>> users;  // key -> problem ids
  for (const auto& [id, record] : *recorded) {
    if (record.math_doc.has_value()) users[record.math_doc->transcript_key].insert(id);
    for (const CodeArtifact& c : record.codes) users[c.transcript_key].insert(id);
  }

  bool ok = true;
  const ReplayStore store(dir.store_dir());
  const std::vector<std::string> keys = store.ListKeys();
  for (const std::string& key : keys) {
    absl::Status s = store.Verify(key);
    if (s.ok()) continue;
    ok = false;
    const auto it = users.find(key);
    const std::string who =
        it == users.end() ? "unused" : absl::StrJoin(it->second, ", ");
    out << "store entry " << key << " (problem " << who << "): " << s.message() << "\n";
  }

  Logger logger(err);
  Sandbox sandbox(SandboxFromManifest(run->manifest), logger.Sink());
  ReplayBackend backend(store);
  PipelineDeps deps;
  deps.agents.gateway = &backend;
  deps.agents.templates = &run->templates;
  deps.agents.prompt.solver_name = run->manifest.solver_name;
  deps.agents.generation = run->manifest.generation;
  deps.executor = &sandbox;
  deps.max_attempts = run->manifest.max_attempts;
  SweepOptions sweep;
  sweep.workers = options.workers;
  absl::StatusOr<std::vector<RunRecord>> replayed =
      RunBenchmark(run->corpus, run->manifest.mode, deps, sweep);
  if (!replayed.ok()) {
    out << "replay failed: " << replayed.status().message() << "\n";
    out << "replay-check: FAILED\n";
    return kExitFailure;
  }

  std::optional<std::string> first_divergent;
  for (const RunRecord& record : *replayed) {
    absl::StatusOr<std::string> expected = ReadFile(dir.RecordPath(record.problem_id));
    std::string problem = record.problem_id;
    if (!expected.ok()) {
      out << "problem " << problem << ": no recorded result\n";
    } else if (*expected != SerializeRunRecord(record)) {
      out << "problem " << problem << ": replayed record differs from "
          << dir.RecordPath(problem).filename().string() << "\n";
    } else {
      continue;
    }
    ok = false;
    if (!first_divergent.has_value()) first_divergent = problem;
  }
  if (first_divergent.has_value()) {
    out << "first divergent problem: " << *first_divergent << "\n";
  }
  if (!ok) {
    out << "replay-check: FAILED\n";
    return kExitFailure;
  }
  out << "replay-check: OK, " << replayed->size() << " problems reproduced from "
      << keys.size() << " store entries\n";
  return kExitOk;
}

}  // namespace oragent
