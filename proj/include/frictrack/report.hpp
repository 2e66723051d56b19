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

#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "frictrack/scenario.hpp"

namespace frictrack {

struct LabeledMetrics {
  std::string label;
  Metrics metrics;
};

/// b over a for one metric; nullopt when either run diverged or the ratio is
/// undefined (0/0 counts as 1 when both values are equal).
std::optional<double> metric_ratio(double a, double b, bool a_diverged, bool b_diverged);

/// Side-by-side metric table plus verdict lines:
///   chattering ratio = TV(u) of b / TV(u) of a
///   noise-robustness ratio = max observer error of b / that of a
std::string compare_report(const LabeledMetrics& a, const LabeledMetrics& b);

/// Columns: k1, noisy, stable, rms_tracking_error, max_observer_error, tv_u,
/// diverged_at (empty when the run did not diverge).
void write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);

}  // namespace frictrack
