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

#include "oragent/result_protocol.h"

#include <charconv>
#include <cmath>
#include <optional>
#include <regex>

#include "absl/strings/match.h"
#include "absl/strings/str_split.h"

namespace oragent {
namespace {

constexpr absl::string_view kValuePrefix = "OPTIMAL_VALUE=";
constexpr absl::string_view kStatusPrefix = "MODEL_STATUS=";

const std::regex& ValueLine() {
  static const std::regex* re = new std::regex(
      R"(^OPTIMAL_VALUE=(-?[0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?)$)");
  return *re;
}

const std::regex& StatusLine() {
  static const std::regex* re =
      new std::regex(R"(^MODEL_STATUS=(INFEASIBLE|UNBOUNDED)$)");
  return *re;
}

}  // namespace

std::variant<Solution, ErrorReport> ParseResult(absl::string_view stdout_text) {
  std::optional<absl::string_view> value_line;
  std::optional<absl::string_view> status_line;
  for (absl::string_view line : absl::StrSplit(stdout_text, '\n')) {
    // Prefix checks keep the regex off ordinary solver log lines.
    if (absl::StartsWith(line, kValuePrefix)) {
      if (std::regex_match(line.begin(), line.end(), ValueLine())) {
        value_line = line;
      }
    } else if (absl::StartsWith(line, kStatusPrefix)) {
      if (std::regex_match(line.begin(), line.end(), StatusLine())) {
        status_line = line;
      }
    }
  }

  ErrorReport report{ErrorKind::kProtocolMissing, std::nullopt, "",
                     TailExcerpt(stdout_text, kStdoutExcerptChars)};
  if (value_line.has_value()) {
    absl::string_view number = value_line->substr(kValuePrefix.size());
    double objective = 0;
    auto [ptr, ec] =
        std::from_chars(number.data(), number.data() + number.size(), objective);
    if (ec == std::errc() && ptr == number.data() + number.size() &&
        std::isfinite(objective)) {
      return Solution{objective, std::string(*value_line)};
    }
    return report;
  }
  if (status_line.has_value()) {
    report.kind = absl::EndsWith(*status_line, "INFEASIBLE")
                      ? ErrorKind::kModelInfeasible
                      : ErrorKind::kModelUnbounded;
  }
  return report;
}

std::string ResultProtocolSpec() {
  return "After solving, print exactly one result line to standard output, "
         "with nothing else on that line:\n"
         "  OPTIMAL_VALUE=<objective value as a plain decimal, e.g. 36 or "
         "-2.5 or 1.25e6>\n"
         "  MODEL_STATUS=INFEASIBLE   (if the model has no feasible solution)\n"
         "  MODEL_STATUS=UNBOUNDED    (if the objective is unbounded)\n"
         "Do not print any other line starting with OPTIMAL_VALUE= or "
         "MODEL_STATUS=.";
}

}  // namespace oragent
