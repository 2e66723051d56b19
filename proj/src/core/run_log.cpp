// Copyright 2026 The frictrack Authors
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

#include "frictrack/run_log.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include "frictrack/errors.hpp"

namespace frictrack {

RunLog::RunLog(std::vector<std::string> columns, int decimation)
    : columns_(std::move(columns)), data_(columns_.size()), decimation_(decimation) {}

std::vector<std::string> RunLog::standard_columns(bool with_x1_hat) {
  std::vector<std::string> cols{"t", "r", "x1", "x2", "y"};
  if (with_x1_hat) cols.emplace_back("x1_hat");
  for (const char* c : {"x2_hat", "theta1_hat", "theta2_hat", "u", "u_star", "eps_formula",
                        "eps_residual"}) {
    cols.emplace_back(c);
  }
  return cols;
}

void RunLog::append(std::span<const double> row) {
  if (row.size() != columns_.size()) {
    throw InvalidInput(fmt::format("row has {} values, log has {} columns", row.size(),
                                   columns_.size()));
  }
  for (std::size_t i = 0; i < row.size(); ++i) data_[i].push_back(row[i]);
}

bool RunLog::has_column(std::string_view name) const {
  return std::find(columns_.begin(), columns_.end(), name) != columns_.end();
}

std::span<const double> RunLog::column(std::string_view name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw InvalidInput(fmt::format("no column '{}'", name));
  return data_[static_cast<std::size_t>(it - columns_.begin())];
}

std::string format_value(double v) { return fmt::format("{:.11e}", v); }

void write_csv(const RunLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");

  std::string line;
  for (std::size_t c = 0; c < log.columns().size(); ++c) {
    if (c > 0) line += ',';
    line += log.columns()[c];
  }
  line += '\n';
  out << line;

  const std::size_t ncols = log.columns().size();
  for (std::size_t r = 0; r < log.rows(); ++r) {
    line.clear();
    for (std::size_t c = 0; c < ncols; ++c) {
      if (c > 0) line += ',';
      line += format_value(log.column(c)[r]);
    }
    line += '\n';
    out << line;
  }
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

RunLog read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open for reading");

  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string(), "missing header row");
  std::vector<std::string> cols;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
  }
  RunLog log(cols, 1);

  std::vector<double> row;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    row.clear();
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw IoError(path.string(), fmt::format("line {}: bad number '{}'", lineno, cell));
      }
      row.push_back(v);
    }
    if (row.size() != cols.size()) {
      throw IoError(path.string(), fmt::format("line {}: expected {} fields, got {}", lineno,
                                               cols.size(), row.size()));
    }
    log.append(row);
  }
  return log;
}

}  // namespace frictrack
