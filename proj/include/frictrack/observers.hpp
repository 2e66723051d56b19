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

#include <array>

#include "frictrack/sim_core.hpp"

namespace frictrack {

using Vec2 = std::array<double, 2>;

/// Symmetric 2x2 matrix stored row-major as {a11, a12, a21, a22}.
using Mat2 = std::array<double, 4>;

/// Overflow-safe log(cosh(z)) = |z| - log 2 + log1p(exp(-2|z|)).
double logcosh(double z);

// ---------------------------------------------------------------------------
// Immersion-and-invariance observer
// ---------------------------------------------------------------------------

struct IandIState {
  double x2I = 0.0;
  double theta1I = 0.0;
  double theta2I = 0.0;
  double k1 = 1.0;

  bool operator==(const IandIState&) const = default;
};

struct IandIOutputs {
  double x2_hat = 0.0;
  double theta1_hat = 0.0;
  double theta2_hat = 0.0;
};

/// Derivatives of the three integrator states (k1 is a constant).
struct IandIDeriv {
  double x2I = 0.0;
  double theta1I = 0.0;
  double theta2I = 0.0;
};

/// Algebraic output map: x2_hat = x2I + k1*x1 and the two parameter estimates
/// with their state-dependent correction terms.
IandIOutputs ii_outputs(const IandIState& s, double x1, double vartheta);

/// Integrator dynamics driven by the measured position and the applied control.
IandIDeriv ii_deriv(const IandIState& s, double x1, double u, double vartheta);

// ---------------------------------------------------------------------------
// Super-twisting sliding-mode observer with least-squares adaptation
// ---------------------------------------------------------------------------

struct SMState {
  double x1_hat = 0.0;
  double x2_hat = 0.0;
  Vec2 delta_theta_hat{0.0, 0.0};
  Mat2 gamma{500.0, 0.0, 0.0, 500.0};
  Vec2 theta_bar{0.2, 0.5};
  double c1 = 0.5;
  double c2 = 25.0;
};

struct SMDeriv {
  double x1_hat = 0.0;
  double x2_hat = 0.0;
  Vec2 delta_theta_hat{0.0, 0.0};
  Mat2 gamma{0.0, 0.0, 0.0, 0.0};
};

/// phi = (-x2_hat, -tanh(vartheta * x2_true)). The second entry needs the
/// true velocity sign; the simulator owns it and passes it in.
Vec2 sm_regressor(double x2_hat, double x2_true, double vartheta);

/// Observer vector field. Innovation is x1_meas - x1_hat.
/// Throws CovarianceDegenerate(t) when gamma is not positive-definite.
SMDeriv sm_deriv(const SMState& s, double x1_meas, double x2_true, double u, double vartheta,
                 const SignMode& mode, double t = 0.0);

/// theta_hat = delta_theta_hat + theta_bar.
inline Vec2 sm_theta_hat(const SMState& s) {
  return {s.delta_theta_hat[0] + s.theta_bar[0], s.delta_theta_hat[1] + s.theta_bar[1]};
}

/// Leading-minor test for a 2x2 matrix.
bool is_spd(const Mat2& m);

/// Replace gamma by (gamma + gamma^T)/2.
inline void symmetrize(Mat2& m) {
  const double off = 0.5 * (m[1] + m[2]);
  m[1] = off;
  m[2] = off;
}

}  // namespace frictrack
