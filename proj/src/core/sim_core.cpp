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

#include "frictrack/sim_core.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <utility>

namespace frictrack {

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.step_h > 0.0) || !std::isfinite(cfg.step_h)) {
    throw InvalidInput(fmt::format("step_h must be > 0 (got {})", cfg.step_h));
  }
  if (!(cfg.t_end >= cfg.step_h) || !std::isfinite(cfg.t_end)) {
    throw InvalidInput(fmt::format("t_end must be >= step_h (got {})", cfg.t_end));
  }
  if (cfg.sign_mode.kind == SignMode::Kind::boundary_layer &&
      !(cfg.sign_mode.eps > 0.0 && std::isfinite(cfg.sign_mode.eps))) {
    throw InvalidInput(fmt::format("boundary layer eps must be > 0 (got {})", cfg.sign_mode.eps));
  }
}

std::int64_t step_count(const IntegratorConfig& cfg) {
  const double ratio = cfg.t_end / cfg.step_h;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::floor(ratio));
}

StateVector::StateVector(std::vector<std::string> names, std::vector<double> values)
    : names_(std::move(names)), values_(std::move(values)) {
  if (names_.size() != values_.size()) {
    throw InvalidInput(fmt::format("state has {} names but {} values", names_.size(),
                                   values_.size()));
  }
}

double StateVector::at(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InvalidInput(fmt::format("no state component '{}'", name));
  return values_[static_cast<std::size_t>(it - names_.begin())];
}

void StateVector::require_finite(double t) const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) throw NumericalBlowup(t, names_[i]);
  }
}

}  // namespace frictrack
