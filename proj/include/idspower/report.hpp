// Copyright 2026 The idspower Authors
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

// Plain-text and CSV rendering of reports. Output depends only on the report
// contents, so identical inputs give identical bytes.

#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "idspower/rational.hpp"

namespace idspower {

struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::vector<std::string> summary;
  std::vector<Table> tables;
  std::vector<std::string> warnings;
};

/// Exact fractions by default; fixed decimals when `decimals` is set.
/// Approximate values are always shown in decimal.
struct NumberFormat {
  std::optional<int> decimals;

  std::string operator()(const Rational& r, bool approximate = false) const {
    if (decimals) return FormatDecimal(r, *decimals);
    if (approximate) return FormatDecimal(r, 6);
    return FormatRational(r);
  }
};

inline std::string RenderText(const Report& report) {
  std::ostringstream os;
  for (const auto& line : report.summary) os << line << '\n';
  for (const auto& table : report.tables) {
    os << '\n';
    if (!table.title.empty()) os << "== " << table.title << " ==\n";
    std::vector<std::size_t> width(table.header.size(), 0);
    auto grow = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
        width[c] = std::max(width[c], row[c].size());
      }
    };
    grow(table.header);
    for (const auto& row : table.rows) grow(row);
    auto emit = [&](const std::vector<std::string>& row) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) line += "  ";
        line += row[c];
        if (c + 1 < row.size() && c < width.size()) {
          line += std::string(width[c] - row[c].size(), ' ');
        }
      }
      os << line << '\n';
    };
    emit(table.header);
    std::size_t rule = 0;
    for (std::size_t c = 0; c < width.size(); ++c) rule += width[c] + (c ? 2 : 0);
    os << std::string(rule, '-') << '\n';
    for (const auto& row : table.rows) emit(row);
  }
  if (!report.warnings.empty()) os << '\n';
  for (const auto& w : report.warnings) os << "warning: " << w << '\n';
  return os.str();
}

inline std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string RenderCsv(const Report& report) {
  std::ostringstream os;
  for (const auto& line : report.summary) os << "# " << line << '\n';
  for (std::size_t t = 0; t < report.tables.size(); ++t) {
    const Table& table = report.tables[t];
    if (t > 0 || !report.summary.empty()) os << '\n';
    if (!table.title.empty()) os << "# " << table.title << '\n';
    auto emit = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) os << ',';
        os << CsvField(row[c]);
      }
      os << '\n';
    };
    emit(table.header);
    for (const auto& row : table.rows) emit(row);
  }
  for (const auto& w : report.warnings) os << "# warning: " << w << '\n';
  return os.str();
}

}  // namespace idspower
