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

// Prompt templates.
//
// Placeholder grammar: "{name}" where name is [a-z_]+ is replaced by the bound
// value; "{{" and "}}" produce literal braces. Any other brace is literal.
// Substitution is a single pass, so braces inside bound values (LaTeX, code)
// are never re-expanded. Referencing a name that is not bound for the prompt
// being rendered is an error.
//
// Bound names per template:
//   system_math, system_code   (none)
//   user_math                  problem
//   user_code                  math_model solver_name protocol_spec
//   user_code_repair           code error solver_name protocol_spec
//   user_math_repair           math_model code error solver_name protocol_spec
//   user_direct                problem solver_name protocol_spec
//
// Template files are JSON objects with any subset of the seven keys above;
// missing keys keep their defaults.

#ifndef ORAGENT_TEMPLATES_H_
#define ORAGENT_TEMPLATES_H_

#include <filesystem>
#include <map>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace oragent {

struct PromptTemplateSet {
  std::string system_math;
  std::string user_math;
  std::string system_code;
  std::string user_code;
  std::string user_code_repair;
  std::string user_math_repair;
  std::string user_direct;

  bool operator==(const PromptTemplateSet&) const = default;
};

const PromptTemplateSet& DefaultTemplates();

absl::StatusOr<PromptTemplateSet> ParseTemplates(absl::string_view json_text);
absl::StatusOr<PromptTemplateSet> LoadTemplates(const std::filesystem::path& path);
std::string SerializeTemplates(const PromptTemplateSet& templates);

// SHA-256 hex of SerializeTemplates; recorded in run manifests.
std::string TemplatesHash(const PromptTemplateSet& templates);

using TemplateBindings = std::map<std::string, std::string, std::less<>>;

absl::StatusOr<std::string> RenderTemplate(absl::string_view tmpl,
                                           const TemplateBindings& bindings);

}  // namespace oragent

#endif  // ORAGENT_TEMPLATES_H_
