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

// Group means, gaps, and fixed-width result tables.

#ifndef ORAGENT_AGGREGATE_H_
#define ORAGENT_AGGREGATE_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace oragent {

// One table cell. A missing value prints as "--" and is left out of means.
struct Cell {
  std::string group;
  std::string row;     // typically the model
  std::string column;  // typically the dataset
  std::optional<double> value;
};

// Mean over every present cell of `group`. NotFound if there is none.
absl::StatusOr<double> GroupMean(const std::vector<Cell>& cells,
                                 absl::string_view group);

// GroupMean(a) - GroupMean(b).
absl::StatusOr<double> Gap(const std::vector<Cell>& cells, absl::string_view a,
                           absl::string_view b);

// Decimal rendering with round-half-even at `places` digits (0..8). The value
// is first fixed to nine decimals so binary representation error cannot
// decide a tie: 0.525 -> "0.52", 5.775 -> "5.78". Negative zero prints
// without its sign.
std::string FormatFixed(double value, int places = 2);

// A plain-text table: one row per (group, row) in first-seen order, one
// column per column name in first-seen order, a "Mean" row after each group,
// and a "Gap" row (first group minus second) when there are exactly two
// groups.
std::string RenderTable(absl::string_view title, const std::vector<Cell>& cells);

}  // namespace oragent

#endif  // ORAGENT_AGGREGATE_H_
