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

#include "frictrack/plant.hpp"

#include "frictrack/errors.hpp"

namespace frictrack {

void validate(const PlantParams& p) {
  if (!(p.theta1 > 0.0) || !std::isfinite(p.theta1)) throw ConfigError("plant.theta1", "must be > 0");
  if (!(p.theta2 > 0.0) || !std::isfinite(p.theta2)) throw ConfigError("plant.theta2", "must be > 0");
  if (!(p.vartheta > 0.0) || !std::isfinite(p.vartheta)) {
    throw ConfigError("plant.vartheta", "must be > 0");
  }
}

}  // namespace frictrack
