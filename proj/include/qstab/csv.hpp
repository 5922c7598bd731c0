// Copyright 2026 The qstab Authors
//
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

#pragma once

// Comma-separated output with '#' comment lines. Reals are always written
// with 12 significant digits ("%#.12g") so reruns diff cleanly.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace qstab::cli {

std::string format_real(double x);

using CsvCell = std::variant<std::int64_t, double, std::string>;

struct CsvTable {
  std::vector<std::string> header_comments;  // written before the column row
  std::vector<std::string> columns;
  std::vector<std::vector<CsvCell>> rows;
  std::vector<std::string> footer_comments;

  void add_row(std::vector<CsvCell> row);
  std::string render() const;
};

/// Writes the rendered table; throws std::runtime_error naming the path if
/// the file cannot be opened or written.
void write_csv(const CsvTable& table, const std::filesystem::path& path);

}  // namespace qstab::cli
