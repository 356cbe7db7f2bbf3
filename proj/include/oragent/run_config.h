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

// Benchmark run configuration and its manifest.json snapshot.
//
// The manifest holds only settings that can change results. Output paths,
// worker counts and artifact retention are left out, so two runs of the same
// configuration write identical manifests wherever they are placed.

#ifndef ORAGENT_RUN_CONFIG_H_
#define ORAGENT_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "oragent/chat.h"
#include "oragent/debug_loop.h"
#include "oragent/sandbox.h"

namespace oragent {

inline constexpr absl::string_view kManifestFormat = "oragent-run-v1";

// Stamped into manifests and printed by --version.
absl::string_view ArtifactVersion();

enum class BackendKind { kLive, kRecord, kReplay };

absl::string_view BackendKindName(BackendKind kind);
absl::StatusOr<BackendKind> ParseBackendKind(absl::string_view name);

struct RunConfig {
  std::filesystem::path corpus_path;
  std::filesystem::path out_dir;
  PipelineMode mode = PipelineMode::kFull;
  BackendKind backend = BackendKind::kLive;
  // Source store for kReplay; for kRecord the store written (default
  // <out_dir>/store).
  std::optional<std::filesystem::path> replay_dir;
  GenerationConfig generation;
  std::optional<std::filesystem::path> templates_path;
  std::string solver_name = "Gurobi";
  int max_attempts = 5;
  int workers = 1;
  SandboxConfig sandbox;
  double tolerance = 0.1;
};

absl::Status ValidateRunConfig(const RunConfig& config);

// What manifest.json records about a run.
struct RunManifest {
  std::string version;
  PipelineMode mode = PipelineMode::kFull;
  BackendKind backend = BackendKind::kLive;
  GenerationConfig generation;
  std::string solver_name;
  std::string templates_sha256;
  std::string corpus_name;
  std::string corpus_sha256;
  int max_attempts = 5;
  int64_t timeout_secs = 60;
  std::vector<std::string> interpreter;
  std::optional<std::string> fixture_runtime;
  double tolerance = 0.1;
};

std::string SerializeManifest(const RunManifest& manifest);
absl::StatusOr<RunManifest> ParseManifest(absl::string_view text);

}  // namespace oragent

#endif  // ORAGENT_RUN_CONFIG_H_
