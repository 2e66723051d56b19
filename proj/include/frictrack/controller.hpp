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

#include "frictrack/observers.hpp"
#include "frictrack/plant.hpp"
#include "frictrack/reference.hpp"

namespace frictrack {

/// Error-dynamics gains; s^2 + alpha2*s + alpha1 is Hurwitz for positive gains.
struct ControllerGains {
  double alpha1 = 0.49;
  double alpha2 = 1.4;

  bool operator==(const ControllerGains&) const = default;
};

void validate(const ControllerGains& g);

/// Full-information law with known parameters.
double ideal_control(const PlantState& s, const ReferenceSample& ref, const PlantParams& p,
                     const ControllerGains& g);

/// Certainty-equivalence law fed by a velocity estimate and parameter estimates.
/// The position error uses the measured position.
double ce_control(double x1_meas, double x2_hat, const Vec2& theta_hat, const ReferenceSample& ref,
                  double vartheta, const ControllerGains& g);

struct EpsilonT {
  double formula = 0.0;   // closed-form perturbation term, printed form
  double residual = 0.0;  // e2' + alpha1*e1 + alpha2*e2 under ce_control
};

/// Perturbation of the tracking-error dynamics caused by estimation errors,
/// with x2_tilde = x2_hat - x2 and theta_tilde = theta_hat - theta.
///
/// `formula` reproduces the printed closed-form expression term by term
/// (including its +alpha2*x2_tilde). `residual` is measured from the plant:
/// the true x2' under ce_control minus the ideal error dynamics, with e1 taken
/// from the same measured position the controller sees. The two differ by
/// 2*alpha2*x2_tilde; both are reported.
EpsilonT epsilon_t(const PlantState& x, double x2_hat, const Vec2& theta_hat, const PlantParams& p,
                   const ControllerGains& g, const ReferenceSample& ref, double x1_meas);

}  // namespace frictrack
