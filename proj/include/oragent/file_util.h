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

#ifndef ORAGENT_FILE_UTIL_H_
#define ORAGENT_FILE_UTIL_H_

#include <filesystem>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace oragent {

absl::StatusOr<std::string> ReadFile(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file.
absl::Status WriteFileAtomically(const std::filesystem::path& path,
                                 absl::string_view contents);

// Maps an arbitrary identifier to a portable file name. Characters outside
// [A-Za-z0-9._-] are percent-encoded; the mapping is injective.
std::string EncodeFileName(absl::string_view id);

// Lowercase hex SHA-256 of `data`.
std::string Sha256Hex(absl::string_view data);

}  // namespace oragent

#endif  // ORAGENT_FILE_UTIL_H_
