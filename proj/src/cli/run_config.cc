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

#include "oragent/run_config.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "json.hpp"

#ifndef ORAGENT_VERSION
#define ORAGENT_VERSION "0.0.0"
#endif

namespace oragent {
namespace {

using Json = nlohmann::ordered_json;

}  // namespace

absl::string_view ArtifactVersion() { return ORAGENT_VERSION; }

absl::string_view BackendKindName(BackendKind kind) {
  switch (kind) {
    case BackendKind::kLive:
      return "live";
    case BackendKind::kRecord:
      return "record";
    case BackendKind::kReplay:
      return "replay";
  }
  return "unknown";
}

absl::StatusOr<BackendKind> ParseBackendKind(absl::string_view name) {
  for (BackendKind k : {BackendKind::kLive, BackendKind::kRecord, BackendKind::kReplay}) {
    if (BackendKindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown backend '", name, "'"));
}

absl::Status ValidateRunConfig(const RunConfig& config) {
  if (config.corpus_path.empty()) return absl::InvalidArgumentError("--corpus is required");
  if (config.out_dir.empty()) return absl::InvalidArgumentError("--out is required");
  if (config.backend == BackendKind::kReplay && !config.replay_dir.has_value()) {
    return absl::InvalidArgumentError("--backend replay needs --replay-dir");
  }
  if (config.backend == BackendKind::kLive && config.sandbox.fixture_runtime.has_value()) {
    return absl::InvalidArgumentError("--fixture-runtime is not allowed with --backend live");
  }
  if (config.max_attempts < 1) {
    return absl::InvalidArgumentError("--max-attempts must be at least 1");
  }
  if (config.workers < 1) return absl::InvalidArgumentError("--workers must be at least 1");
  if (config.sandbox.interpreter.empty()) {
    return absl::InvalidArgumentError("--interpreter must not be empty");
  }
  if (config.sandbox.limits.wall_timeout.count() <= 0) {
    return absl::InvalidArgumentError("--timeout-secs must be positive");
  }
  if (!(config.tolerance > 0.0) || !std::isfinite(config.tolerance)) {
    return absl::InvalidArgumentError("--tolerance must be positive");
  }
  if (config.solver_name.empty()) {
    return absl::InvalidArgumentError("--solver-name must not be empty");
  }
  return ValidateGenerationConfig(config.generation);
}

std::string SerializeManifest(const RunManifest& m) {
  Json doc;
  doc["format"] = std::string(kManifestFormat);
  doc["version"] = m.version;
  doc["mode"] = std::string(PipelineModeName(m.mode));
  doc["backend"] = std::string(BackendKindName(m.backend));
  doc["model_id"] = m.generation.model_id;
  doc["temperature"] = m.generation.temperature;
  doc["max_output_tokens"] = m.generation.max_output_tokens;
  doc["request_timeout_secs"] = m.generation.request_timeout.count();
  doc["solver_name"] = m.solver_name;
  doc["templates_sha256"] = m.templates_sha256;
  doc["corpus_name"] = m.corpus_name;
  doc["corpus_sha256"] = m.corpus_sha256;
  doc["max_attempts"] = m.max_attempts;
  doc["timeout_secs"] = m.timeout_secs;
  doc["interpreter"] = m.interpreter;
  doc["fixture_runtime"] =
      m.fixture_runtime.has_value() ? Json(*m.fixture_runtime) : Json();
  doc["tolerance"] = m.tolerance;
  return doc.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

absl::StatusOr<RunManifest> ParseManifest(absl::string_view text) {
  RunManifest m;
  try {
    const Json doc = Json::parse(text.begin(), text.end());
    if (doc.at("format").get<std::string>() != kManifestFormat) {
      return absl::InvalidArgumentError("manifest: unsupported format");
    }
    m.version = doc.at("version").get<std::string>();
    absl::StatusOr<PipelineMode> mode = ParsePipelineMode(doc.at("mode").get<std::string>());
    if (!mode.ok()) return mode.status();
    m.mode = *mode;
    absl::StatusOr<BackendKind> backend =
        ParseBackendKind(doc.at("backend").get<std::string>());
    if (!backend.ok()) return backend.status();
    m.backend = *backend;
    m.generation.model_id = doc.at("model_id").get<std::string>();
    m.generation.temperature = doc.at("temperature").get<double>();
    m.generation.max_output_tokens = doc.at("max_output_tokens").get<int>();
    m.generation.request_timeout =
        std::chrono::seconds(doc.at("request_timeout_secs").get<int64_t>());
    m.solver_name = doc.at("solver_name").get<std::string>();
    m.templates_sha256 = doc.at("templates_sha256").get<std::string>();
    m.corpus_name = doc.at("corpus_name").get<std::string>();
    m.corpus_sha256 = doc.at("corpus_sha256").get<std::string>();
    m.max_attempts = doc.at("max_attempts").get<int>();
    m.timeout_secs = doc.at("timeout_secs").get<int64_t>();
    m.interpreter = doc.at("interpreter").get<std::vector<std::string>>();
    if (!doc.at("fixture_runtime").is_null()) {
      m.fixture_runtime = doc.at("fixture_runtime").get<std::string>();
    }
    m.tolerance = doc.at("tolerance").get<double>();
  } catch (const Json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("manifest: ", e.what()));
  }
  return m;
}

}  // namespace oragent
