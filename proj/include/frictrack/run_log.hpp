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

#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frictrack {

/// Column-ordered time-series table produced by a run.
///
/// Columns are t, r, x1, x2, y, [x1_hat], x2_hat, theta1_hat, theta2_hat, u,
/// u_star, eps_formula, eps_residual; x1_hat is present only for the
/// sliding-mode observer.
class RunLog {
 public:
  RunLog() = default;
  RunLog(std::vector<std::string> columns, int decimation);

  /// Standard column set for a run with or without the x1_hat column.
  static std::vector<std::string> standard_columns(bool with_x1_hat);

  void append(std::span<const double> row);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  std::size_t rows() const noexcept { return data_.empty() ? 0 : data_.front().size(); }
  bool empty() const noexcept { return rows() == 0; }
  int decimation() const noexcept { return decimation_; }
  bool has_column(std::string_view name) const;

  /// Throws InvalidInput for an unknown column.
  std::span<const double> column(std::string_view name) const;
  std::span<const double> column(std::size_t index) const { return data_.at(index); }

  bool operator==(const RunLog&) const = default;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> data_;
  int decimation_ = 1;
};

/// "%.11e": 12 significant digits, scientific.
std::string format_value(double v);

/// Header row plus one line per sample; bytes depend only on the log contents.
void write_csv(const RunLog& log, const std::filesystem::path& path);

/// Reads a file written by write_csv. Decimation is not stored in the file and
/// is reported as 1.
RunLog read_csv(const std::filesystem::path& path);

}  // namespace frictrack
