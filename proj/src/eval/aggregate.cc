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

#include "oragent/aggregate.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace oragent {
namespace {

constexpr int kSnapDigits = 9;

template <typename T>
void AddUnique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

std::string Pad(absl::string_view s, size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

std::string PadLeft(absl::string_view s, size_t width) {
  std::string out;
  if (s.size() < width) out.append(width - s.size(), ' ');
  absl::StrAppend(&out, s);
  return out;
}

}  // namespace

absl::StatusOr<double> GroupMean(const std::vector<Cell>& cells,
                                 absl::string_view group) {
  double sum = 0.0;
  int n = 0;
  for (const Cell& c : cells) {
    if (c.group != group || !c.value.has_value()) continue;
    sum += *c.value;
    ++n;
  }
  if (n == 0) {
    return absl::NotFoundError(absl::StrCat("group '", group, "' has no values"));
  }
  return sum / n;
}

absl::StatusOr<double> Gap(const std::vector<Cell>& cells, absl::string_view a,
                           absl::string_view b) {
  absl::StatusOr<double> ma = GroupMean(cells, a);
  if (!ma.ok()) return ma.status();
  absl::StatusOr<double> mb = GroupMean(cells, b);
  if (!mb.ok()) return mb.status();
  return *ma - *mb;
}

std::string FormatFixed(double value, int places) {
  if (!std::isfinite(value)) return absl::StrFormat("%f", value);
  places = std::clamp(places, 0, kSnapDigits - 1);
  std::string s = absl::StrFormat("%.*f", kSnapDigits, value);
  bool negative = false;
  if (s.front() == '-') {
    negative = true;
    s.erase(0, 1);
  }
  const size_t dot = s.find('.');
  size_t int_len = dot;
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  const size_t keep = int_len + places;
  const char first_dropped = digits[keep];
  const bool rest_nonzero =
      digits.find_first_not_of('0', keep + 1) != std::string::npos;
  std::string kept = digits.substr(0, keep);
  const bool odd = (kept.back() - '0') % 2 == 1;
  const bool round_up = first_dropped > '5' ||
                        (first_dropped == '5' && (rest_nonzero || odd));
  if (round_up) {
    int i = static_cast<int>(kept.size()) - 1;
    for (; i >= 0; --i) {
      if (kept[i] == '9') {
        kept[i] = '0';
      } else {
        ++kept[i];
        break;
      }
    }
    if (i < 0) {
      kept.insert(kept.begin(), '1');
      ++int_len;
    }
  }
  if (kept.find_first_not_of('0') == std::string::npos) negative = false;
  std::string out = negative ? "-" : "";
  absl::StrAppend(&out, absl::string_view(kept).substr(0, int_len));
  if (places > 0) absl::StrAppend(&out, ".", absl::string_view(kept).substr(int_len));
  return out;
}

std::string RenderTable(absl::string_view title, const std::vector<Cell>& cells) {
  std::vector<std::string> groups, columns;
  std::vector<std::pair<std::string, std::string>> rows;
  for (const Cell& c : cells) {
    AddUnique(groups, c.group);
    AddUnique(columns, c.column);
    AddUnique(rows, std::make_pair(c.group, c.row));
  }

  // Body lines as string vectors, laid out once widths are known.
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> header = {"Group", "Model"};
  header.insert(header.end(), columns.begin(), columns.end());
  lines.push_back(header);
  for (const std::string& g : groups) {
    bool first = true;
    for (const auto& [rg, row] : rows) {
      if (rg != g) continue;
      std::vector<std::string> line = {first ? g : "", row};
      first = false;
      for (const std::string& col : columns) {
        std::string text = "";
        for (const Cell& c : cells) {
          if (c.group == g && c.row == row && c.column == col) {
            text = c.value.has_value() ? FormatFixed(*c.value) : "--";
          }
        }
        line.push_back(text);
      }
      lines.push_back(std::move(line));
    }
    absl::StatusOr<double> mean = GroupMean(cells, g);
    std::vector<std::string> line = {"", "Mean",
                                     mean.ok() ? FormatFixed(*mean) : "--"};
    lines.push_back(std::move(line));
  }
  if (groups.size() == 2) {
    absl::StatusOr<double> gap = Gap(cells, groups[0], groups[1]);
    lines.push_back({"Gap", absl::StrCat(groups[0], " - ", groups[1]),
                     gap.ok() ? FormatFixed(*gap) : "--"});
  }

  std::vector<size_t> widths;
  for (const auto& line : lines) {
    if (widths.size() < line.size()) widths.resize(line.size(), 0);
    for (size_t i = 0; i < line.size(); ++i) {
      widths[i] = std::max(widths[i], line[i].size());
    }
  }
  std::string out = absl::StrCat(title, "\n");
  for (size_t li = 0; li < lines.size(); ++li) {
    std::string text;
    for (size_t i = 0; i < lines[li].size(); ++i) {
      if (i > 0) text += "  ";
      text += i < 2 ? Pad(lines[li][i], widths[i]) : PadLeft(lines[li][i], widths[i]);
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    absl::StrAppend(&out, text, "\n");
    if (li == 0) {
      size_t total = 0;
      for (size_t w : widths) total += w;
      total += 2 * (widths.size() - 1);
      absl::StrAppend(&out, std::string(total, '-'), "\n");
    }
  }
  return out;
}

}  // namespace oragent
