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

#include "oragent/reasoning.h"

#include <vector>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace oragent {
namespace {

// One left-to-right pass. Returns false when no tag was present.
bool StripPass(absl::string_view text, std::string& answer,
               std::vector<std::string>& reasoning) {
  bool found = false;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t open = text.find(kThinkOpen, pos);
    const size_t close = text.find(kThinkClose, pos);
    if (close != absl::string_view::npos &&
        (open == absl::string_view::npos || close < open)) {
      // Orphan closing tag.
      found = true;
      reasoning.emplace_back(text.substr(pos, close - pos));
      pos = close + kThinkClose.size();
      continue;
    }
    if (open == absl::string_view::npos) {
      absl::StrAppend(&answer, text.substr(pos));
      break;
    }
    found = true;
    absl::StrAppend(&answer, text.substr(pos, open - pos));
    const size_t body = open + kThinkOpen.size();
    const size_t end = text.find(kThinkClose, body);
    if (end == absl::string_view::npos) {
      reasoning.emplace_back(text.substr(body));
      break;
    }
    reasoning.emplace_back(text.substr(body, end - body));
    pos = end + kThinkClose.size();
  }
  return found;
}

}  // namespace

StrippedText StripReasoning(absl::string_view raw) {
  std::vector<std::string> pieces;
  std::string current(raw);
  bool any = false;
  // Removing a span can splice a new tag together ("<thi<think>x</think>nk>"),
  // so repeat until no tag remains. Each productive pass shortens the text.
  for (;;) {
    std::string next;
    if (!StripPass(current, next, pieces)) break;
    any = true;
    current = std::move(next);
  }
  if (!any) return StrippedText{std::nullopt, std::move(current)};

  std::vector<absl::string_view> nonempty;
  for (const std::string& piece : pieces) {
    absl::string_view trimmed = absl::StripAsciiWhitespace(piece);
    if (!trimmed.empty()) nonempty.push_back(trimmed);
  }
  return StrippedText{absl::StrJoin(nonempty, "\n"),
                      std::string(absl::StripAsciiWhitespace(current))};
}

}  // namespace oragent
