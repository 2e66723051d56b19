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

#include "frictrack/errors.hpp"

#include <fmt/format.h>

#include <utility>

namespace frictrack {

NumericalBlowup::NumericalBlowup(double t, std::string component)
    : Error(fmt::format("numerical blowup at t={:.6g} in component '{}'", t, component)),
      t_(t),
      component_(std::move(component)) {}

CovarianceDegenerate::CovarianceDegenerate(double t, double minor1, double minor2)
    : Error(fmt::format("covariance lost positive-definiteness at t={:.6g} "
                        "(leading minors {:.6g}, {:.6g})",
                        t, minor1, minor2)),
      t_(t) {}

ConfigError::ConfigError(std::string field, const std::string& detail)
    : Error(fmt::format("config error in '{}': {}", field, detail)), field_(std::move(field)) {}

IoError::IoError(const std::string& path, const std::string& detail)
    : Error(fmt::format("{}: {}", path, detail)) {}

}  // namespace frictrack
