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

#include "magnoent/table.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "magnoent/errors.hpp"

namespace magnoent::table {

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw InvalidInput("row has " + std::to_string(row.size()) + " cells, table has " +
                       std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_csv(const ResultTable& table, std::ostream& out) {
  for (const auto& line : table.metadata) out << "# " << line << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (row[c]) out << format_number(*row[c]);
    }
    out << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Cell parse_cell(const std::string& text) {
  if (text.empty()) return std::nullopt;
  if (text == "nan") return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw IoError("malformed numeric CSV field '" + text + "'");
  }
  return v;
}

}  // namespace

ResultTable read_csv(std::istream& in) {
  ResultTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("#", 0) == 0) {
      t.metadata.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1));
      continue;
    }
    if (!have_header) {
      t.columns = split(line);
      have_header = true;
      continue;
    }
    std::vector<Cell> row;
    for (const auto& f : split(line)) row.push_back(parse_cell(f));
    if (row.size() != t.columns.size()) throw IoError("CSV row width does not match header");
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw IoError("CSV input has no header row");
  return t;
}

void write_json(const ResultTable& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["metadata"] = table.metadata;
  auto& cols = doc["columns"];
  cols = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      if (row[c] && std::isfinite(*row[c])) arr.push_back(*row[c]); else arr.push_back(nullptr);
    }
    cols[table.columns[c]] = std::move(arr);
  }
  out << doc.dump(1) << '\n';
}

}  // namespace magnoent::table
