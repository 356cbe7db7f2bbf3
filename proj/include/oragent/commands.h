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

// The oragent subcommands. Each returns a process exit code: 0 on success,
// 1 when the command could not do its job (bad input, infrastructure
// failure, failed check). Problems the pipeline fails to solve are results,
// not errors.

#ifndef ORAGENT_COMMANDS_H_
#define ORAGENT_COMMANDS_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "oragent/run_config.h"

namespace oragent {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;

// Sweeps a corpus into config.out_dir. Resumes when out_dir already holds a
// run with the same manifest.
int RunCommand(const RunConfig& config, std::ostream& out, std::ostream& err);

struct EvalOptions {
  std::vector<std::filesystem::path> run_dirs;
  // Group label per run dir; defaults to the run's mode.
  std::vector<std::string> groups;
  // Judge against this corpus instead of the run's own copy.
  std::optional<std::filesystem::path> corpus_path;
  std::optional<double> tolerance;  // default: the run's tolerance
  // Writes <out_prefix>.json and <out_prefix>.txt when set.
  std::optional<std::filesystem::path> out_prefix;
};

int EvalCommand(const EvalOptions& options, std::ostream& out, std::ostream& err);

int ValidateCommand(const std::filesystem::path& corpus_path, std::ostream& out,
                    std::ostream& err);

struct ReplayCheckOptions {
  std::filesystem::path run_dir;
  int workers = 1;
};

// Verifies every store entry, re-runs the sweep from the run's own store and
// compares each record byte for byte.
int ReplayCheckCommand(const ReplayCheckOptions& options, std::ostream& out,
                       std::ostream& err);

}  // namespace oragent

#endif  // ORAGENT_COMMANDS_H_
