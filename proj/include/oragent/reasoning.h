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

#ifndef ORAGENT_REASONING_H_
#define ORAGENT_REASONING_H_

#include <optional>
#include <string>

#include "absl/strings/string_view.h"

namespace oragent {

inline constexpr absl::string_view kThinkOpen = "<think>";
inline constexpr absl::string_view kThinkClose = "</think>";

struct StrippedText {
  std::optional<std::string> reasoning;
  std::string answer;

  bool operator==(const StrippedText&) const = default;
};

// Separates reasoning-model deliberation from the final answer.
//
//  * Every "<think>...</think>" span is removed from the answer; span bodies
//    are trimmed and joined with '\n' into `reasoning`.
//  * An opening tag with no closing tag turns the remainder into reasoning.
//  * A closing tag with no opening tag (some endpoints drop the opener) turns
//    everything before it into reasoning.
//  * Text without tags is returned unchanged with no reasoning. When any tag
//    was found, the answer is trimmed of surrounding whitespace.
//
// Idempotent on the answer: StripReasoning(r.answer).answer == r.answer.
StrippedText StripReasoning(absl::string_view raw);

}  // namespace oragent

#endif  // ORAGENT_REASONING_H_
