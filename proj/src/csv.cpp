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

#include "qstab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "qstab/numkit.hpp"

namespace qstab::cli {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g", x);
  return buf;
}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != columns.size()) {
    throw ValidationError("CsvTable: row width does not match the column count");
  }
  rows.push_back(std::move(row));
}

std::string CsvTable::render() const {
  std::string out;
  for (const auto& c : header_comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* n = std::get_if<std::int64_t>(&row[i])) {
        out += std::to_string(*n);
      } else if (const auto* x = std::get_if<double>(&row[i])) {
        out += format_real(*x);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += '\n';
  }
  for (const auto& c : footer_comments) out += "# " + c + "\n";
  return out;
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "' for writing");
  const std::string text = table.render();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw std::runtime_error("failed writing output file '" + path.string() + "'");
}

}  // namespace qstab::cli
