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

#include "frictrack/controller.hpp"

#include <cmath>

#include "frictrack/errors.hpp"

namespace frictrack {

void validate(const ControllerGains& g) {
  if (!(g.alpha1 > 0.0) || !std::isfinite(g.alpha1)) {
    throw ConfigError("controller.alpha1", "must be > 0");
  }
  if (!(g.alpha2 > 0.0) || !std::isfinite(g.alpha2)) {
    throw ConfigError("controller.alpha2", "must be > 0");
  }
}

double ideal_control(const PlantState& s, const ReferenceSample& ref, const PlantParams& p,
                     const ControllerGains& g) {
  return p.theta1 * s.x2 + p.theta2 * std::tanh(p.vartheta * s.x2) + ref.rddot -
         g.alpha1 * (s.x1 - ref.r) - g.alpha2 * (s.x2 - ref.rdot);
}

double ce_control(double x1_meas, double x2_hat, const Vec2& theta_hat, const ReferenceSample& ref,
                  double vartheta, const ControllerGains& g) {
  return theta_hat[0] * x2_hat + theta_hat[1] * std::tanh(vartheta * x2_hat) + ref.rddot -
         g.alpha1 * (x1_meas - ref.r) - g.alpha2 * (x2_hat - ref.rdot);
}

EpsilonT epsilon_t(const PlantState& x, double x2_hat, const Vec2& theta_hat, const PlantParams& p,
                   const ControllerGains& g, const ReferenceSample& ref, double x1_meas) {
  const double x2t = x2_hat - x.x2;
  const double th1t = theta_hat[0] - p.theta1;
  const double th2t = theta_hat[1] - p.theta2;
  const double relay_hat = std::tanh(p.vartheta * (x.x2 + x2t));
  const double relay = std::tanh(p.vartheta * x.x2);

  EpsilonT eps;
  eps.formula = p.theta1 * x2t + th1t * (x.x2 + x2t) + th2t * relay_hat +
                p.theta2 * (relay_hat - relay) + g.alpha2 * x2t;

  const double u = ce_control(x1_meas, x2_hat, theta_hat, ref, p.vartheta, g);
  const double e2dot = plant_deriv(x, u, p).x2 - ref.rddot;
  eps.residual = e2dot + g.alpha1 * (x1_meas - ref.r) + g.alpha2 * (x.x2 - ref.rdot);
  return eps;
}

}  // namespace frictrack
