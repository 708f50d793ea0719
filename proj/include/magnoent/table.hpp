// Copyright 2026 The magnoent Authors
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

// Tabular output. CSV files carry '#'-prefixed metadata lines, one header row
// and one row per record; nulls are empty fields. Numbers use the shortest
// decimal form that round-trips to the same double.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace magnoent::table {

using Cell = std::optional<double>;

struct ResultTable {
  /// Metadata lines without the leading "# ".
  std::vector<std::string> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws InvalidInput if a row width differs from the column count.
  void add_row(std::vector<Cell> row);
};

std::string format_number(double value);

void write_csv(const ResultTable& table, std::ostream& out);
/// Throws IoError on malformed input.
ResultTable read_csv(std::istream& in);

/// {"metadata": [...], "columns": {"name": [values or null], ...}}
void write_json(const ResultTable& table, std::ostream& out);

}  // namespace magnoent::table
