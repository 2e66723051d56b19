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

#include <cmath>

namespace frictrack {

/// Viscous coefficient, Coulomb magnitude and relay steepness of the friction
/// model theta1*x2 + theta2*tanh(vartheta*x2). All strictly positive.
struct PlantParams {
  double theta1 = 0.4;
  double theta2 = 1.0;
  double vartheta = 100.0;

  bool operator==(const PlantParams&) const = default;
};

/// Generalized position and velocity. No saturation is imposed.
struct PlantState {
  double x1 = 0.0;
  double x2 = 0.0;

  bool operator==(const PlantState&) const = default;
};

/// Throws ConfigError("plant.<field>") for non-positive coefficients.
void validate(const PlantParams& p);

/// Friction magnitude subtracted from the velocity dynamics.
inline double friction_force(double x2, const PlantParams& p) {
  return p.theta1 * x2 + p.theta2 * std::tanh(p.vartheta * x2);
}

/// (x1', x2') = (x2, u - friction_force(x2)).
inline PlantState plant_deriv(const PlantState& s, double u, const PlantParams& p) {
  return {s.x2, -friction_force(s.x2, p) + u};
}

}  // namespace frictrack
