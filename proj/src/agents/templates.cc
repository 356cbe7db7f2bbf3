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

#include "oragent/templates.h"

#include <algorithm>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "oragent/file_util.h"

namespace oragent {
namespace {

using Json = nlohmann::ordered_json;

std::vector<std::pair<absl::string_view, std::string PromptTemplateSet::*>>
Fields() {
  return {
      {"system_math", &PromptTemplateSet::system_math},
      {"user_math", &PromptTemplateSet::user_math},
      {"system_code", &PromptTemplateSet::system_code},
      {"user_code", &PromptTemplateSet::user_code},
      {"user_code_repair", &PromptTemplateSet::user_code_repair},
      {"user_math_repair", &PromptTemplateSet::user_math_repair},
      {"user_direct", &PromptTemplateSet::user_direct},
  };
}

PromptTemplateSet MakeDefaults() {
  PromptTemplateSet t;
  t.system_math =
      "You are an operations research expert. Build a precise mathematical "
      "optimization model for the problem the user describes.\n"
      "Present the model in Markdown with these sections:\n"
      "1. Decision Variables: symbol, meaning, unit, and domain (continuous, "
      "integer or binary).\n"
      "2. Objective Function: direction (maximize or minimize) and formula.\n"
      "3. Constraints: each constraint with a short explanation.\n"
      "Use the data given in the problem exactly. Do not write code.";
  t.user_math = "Problem:\n{problem}";
  t.system_code =
      "You are an expert in optimization software. You write complete, "
      "runnable Python programs that build and solve optimization models. "
      "Reply with the whole program in a single fenced code block.";
  t.user_code =
      "Write Python code compatible with the {solver_name} solver that "
      "implements and solves the following mathematical model.\n\n"
      "Mathematical model:\n{math_model}\n\n"
      "Output requirements:\n{protocol_spec}\n\n"
      "Return the complete program in one ```python code block.";
  t.user_code_repair =
      "The following program failed when executed.\n\n"
      "Program:\n```python\n{code}\n```\n\n"
      "Execution result:\n```\n{error}\n```\n\n"
      "Find and fix the cause. Return the complete corrected program, not a "
      "diff, in one ```python code block. It must use the {solver_name} "
      "solver and follow these output requirements:\n{protocol_spec}";
  t.user_math_repair =
      "Several attempts to fix the program below have failed, so the "
      "mathematical model itself may be wrong.\n\n"
      "Mathematical model:\n{math_model}\n\n"
      "Last program:\n```python\n{code}\n```\n\n"
      "Execution result:\n```\n{error}\n```\n\n"
      "Re-examine the model: check the decision variables, the objective and "
      "every constraint, and correct any mistake. Write the revised model as "
      "plain Markdown without code fences. Then write a new complete program "
      "for the revised model in one ```python code block, using the "
      "{solver_name} solver and following these output requirements:\n"
      "{protocol_spec}";
  t.user_direct =
      "Write Python code compatible with the {solver_name} solver that models "
      "and solves the following operations research problem.\n\n"
      "Problem:\n{problem}\n\n"
      "Output requirements:\n{protocol_spec}\n\n"
      "Return the complete program in one ```python code block.";
  return t;
}

bool IsNameChar(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }

}  // namespace

const PromptTemplateSet& DefaultTemplates() {
  static const PromptTemplateSet* defaults = new PromptTemplateSet(MakeDefaults());
  return *defaults;
}

absl::StatusOr<PromptTemplateSet> ParseTemplates(absl::string_view json_text) {
  PromptTemplateSet templates = DefaultTemplates();
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    return absl::InvalidArgumentError(absl::StrCat("template file: ", e.what()));
  }
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("template file must hold a JSON object");
  }
  const auto fields = Fields();
  for (const auto& [key, value] : doc.items()) {
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&](const auto& f) { return f.first == key; });
    if (it == fields.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("template file: unknown template '", key, "'"));
    }
    if (!value.is_string()) {
      return absl::InvalidArgumentError(
          absl::StrCat("template file: '", key, "' must be a string"));
    }
    templates.*(it->second) = value.get<std::string>();
  }
  return templates;
}

absl::StatusOr<PromptTemplateSet> LoadTemplates(const std::filesystem::path& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseTemplates(*text);
}

std::string SerializeTemplates(const PromptTemplateSet& templates) {
  Json doc;
  for (const auto& [key, member] : Fields()) doc[std::string(key)] = templates.*member;
  return doc.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

std::string TemplatesHash(const PromptTemplateSet& templates) {
  return Sha256Hex(SerializeTemplates(templates));
}

absl::StatusOr<std::string> RenderTemplate(absl::string_view tmpl,
                                           const TemplateBindings& bindings) {
  std::string out;
  out.reserve(tmpl.size());
  size_t i = 0;
  while (i < tmpl.size()) {
    const char c = tmpl[i];
    if (c == '{' && i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
      out.push_back('{');
      i += 2;
      continue;
    }
    if (c == '}' && i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
      out.push_back('}');
      i += 2;
      continue;
    }
    if (c == '{') {
      size_t j = i + 1;
      while (j < tmpl.size() && IsNameChar(tmpl[j])) ++j;
      if (j > i + 1 && j < tmpl.size() && tmpl[j] == '}') {
        absl::string_view name = tmpl.substr(i + 1, j - i - 1);
        auto it = bindings.find(name);
        if (it == bindings.end()) {
          return absl::InvalidArgumentError(
              absl::StrCat("unbound placeholder {", name, "}"));
        }
        out.append(it->second);
        i = j + 1;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

}  // namespace oragent
