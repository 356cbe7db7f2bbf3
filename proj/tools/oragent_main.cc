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

// oragent: benchmark driver.
//
//   oragent run     --corpus c.jsonl --out runs/x [--backend live|replay ...]
//   oragent record  --corpus c.jsonl --out runs/x
//   oragent eval    --run-dir runs/x [--run-dir runs/y] [--group a --group b]
//   oragent validate --corpus c.jsonl
//   oragent replay-check --run-dir runs/x
//
// Every option can also come from an INI/TOML file given with --config;
// options of a subcommand go in a section named after it ([run]).

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_split.h"
#include "oragent/commands.h"
#include "oragent/run_config.h"

namespace {

struct RunFlags {
  std::string corpus;
  std::string out;
  std::string mode = "full";
  std::string backend = "live";
  std::string replay_dir;
  std::string model = "deepseek-reasoner";
  double temperature = 0.0;
  int max_output_tokens = 8192;
  int request_timeout_secs = 600;
  std::string templates;
  std::string solver_name = "Gurobi";
  int max_attempts = 5;
  int workers = 1;
  int timeout_secs = 60;
  std::string interpreter = "python3";
  bool keep_artifacts = false;
  std::string fixture_runtime;
  double tolerance = 0.1;
};

void AddRunOptions(CLI::App* cmd, RunFlags& f, bool allow_backend) {
  cmd->add_option("--corpus", f.corpus, "Corpus JSONL file")->required();
  cmd->add_option("--out", f.out, "Run directory to create or resume")->required();
  cmd->add_option("--mode", f.mode, "direct, model-code or full")
      ->check(CLI::IsMember({"direct", "model-code", "model_code", "full"}))
      ->capture_default_str();
  if (allow_backend) {
    cmd->add_option("--backend", f.backend, "live, record or replay")
        ->check(CLI::IsMember({"live", "record", "replay"}))
        ->capture_default_str();
  }
  cmd->add_option("--replay-dir", f.replay_dir,
                  "Store to replay from (replay) or record into (record)");
  cmd->add_option("--model", f.model, "Model id")->capture_default_str();
  cmd->add_option("--temperature", f.temperature)->capture_default_str();
  cmd->add_option("--max-output-tokens", f.max_output_tokens)->capture_default_str();
  cmd->add_option("--request-timeout-secs", f.request_timeout_secs)
      ->capture_default_str();
  cmd->add_option("--templates", f.templates, "Prompt template overrides (JSON)");
  cmd->add_option("--solver-name", f.solver_name, "Solver named in prompts")
      ->capture_default_str();
  cmd->add_option("--max-attempts", f.max_attempts, "Executions per problem (full mode)")
      ->capture_default_str();
  cmd->add_option("--workers", f.workers, "Problems solved concurrently")
      ->capture_default_str();
  cmd->add_option("--timeout-secs", f.timeout_secs, "Wall limit per execution")
      ->capture_default_str();
  cmd->add_option("--interpreter", f.interpreter,
                  "Interpreter command; the program path is appended")
      ->capture_default_str();
  cmd->add_flag("--keep-artifacts", f.keep_artifacts,
                "Keep each execution's working directory");
  cmd->add_option("--fixture-runtime", f.fixture_runtime,
                  "Directory prepended to PYTHONPATH of generated programs");
  cmd->add_option("--tolerance", f.tolerance, "Judge tolerance")->capture_default_str();
}

oragent::RunConfig ToConfig(const RunFlags& f, oragent::BackendKind backend) {
  oragent::RunConfig c;
  c.corpus_path = f.corpus;
  c.out_dir = f.out;
  c.mode = *oragent::ParsePipelineMode(f.mode);
  c.backend = backend;
  if (!f.replay_dir.empty()) c.replay_dir = f.replay_dir;
  c.generation.model_id = f.model;
  c.generation.temperature = f.temperature;
  c.generation.max_output_tokens = f.max_output_tokens;
  c.generation.request_timeout = std::chrono::seconds(f.request_timeout_secs);
  if (!f.templates.empty()) c.templates_path = f.templates;
  c.solver_name = f.solver_name;
  c.max_attempts = f.max_attempts;
  c.workers = f.workers;
  c.sandbox.interpreter = absl::StrSplit(f.interpreter, ' ', absl::SkipEmpty());
  c.sandbox.limits.wall_timeout = std::chrono::seconds(f.timeout_secs);
  c.sandbox.limits.keep_artifacts = f.keep_artifacts;
  if (!f.fixture_runtime.empty()) {
    c.sandbox.fixture_runtime = std::filesystem::absolute(f.fixture_runtime);
  }
  c.tolerance = f.tolerance;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OR problem solving benchmark: math model, code, execute, repair."};
  app.set_config("--config", "", "INI/TOML file with option defaults");
  app.set_version_flag("--version", std::string(oragent::ArtifactVersion()));
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Solve every problem of a corpus");
  AddRunOptions(run, run_flags, /*allow_backend=*/true);

  RunFlags record_flags;
  CLI::App* record =
      app.add_subcommand("record", "Run against the live endpoint, storing every exchange");
  AddRunOptions(record, record_flags, /*allow_backend=*/false);

  oragent::EvalOptions eval_options;
  std::vector<std::string> eval_dirs;
  std::string eval_corpus, eval_out;
  double eval_tolerance = 0.0;
  CLI::App* eval = app.add_subcommand("eval", "Score run directories and print tables");
  eval->add_option("--run-dir", eval_dirs, "Run directory (repeatable)")->required();
  eval->add_option("--group", eval_options.groups, "Group label per run directory");
  eval->add_option("--corpus", eval_corpus, "Judge against this corpus instead");
  CLI::Option* tol =
      eval->add_option("--tolerance", eval_tolerance, "Override the run's tolerance");
  eval->add_option("--out", eval_out, "Write <out>.json and <out>.txt");

  std::string validate_corpus;
  CLI::App* validate = app.add_subcommand("validate", "Check a corpus file");
  validate->add_option("--corpus", validate_corpus, "Corpus JSONL file")->required();

  oragent::ReplayCheckOptions check_options;
  std::string check_dir;
  CLI::App* check = app.add_subcommand(
      "replay-check", "Re-run a run directory from its own store and compare");
  check->add_option("--run-dir", check_dir, "Run directory")->required();
  check->add_option("--workers", check_options.workers)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*run) {
    absl::StatusOr<oragent::BackendKind> backend =
        oragent::ParseBackendKind(run_flags.backend);
    return oragent::RunCommand(ToConfig(run_flags, *backend), std::cout, std::cerr);
  }
  if (*record) {
    return oragent::RunCommand(ToConfig(record_flags, oragent::BackendKind::kRecord),
                               std::cout, std::cerr);
  }
  if (*eval) {
    for (const std::string& d : eval_dirs) eval_options.run_dirs.emplace_back(d);
    if (!eval_corpus.empty()) eval_options.corpus_path = eval_corpus;
    if (tol->count() > 0) eval_options.tolerance = eval_tolerance;
    if (!eval_out.empty()) eval_options.out_prefix = eval_out;
    return oragent::EvalCommand(eval_options, std::cout, std::cerr);
  }
  if (*validate) {
    return oragent::ValidateCommand(validate_corpus, std::cout, std::cerr);
  }
  if (*check) {
    check_options.run_dir = check_dir;
    return oragent::ReplayCheckCommand(check_options, std::cout, std::cerr);
  }
  return oragent::kExitFailure;
}
