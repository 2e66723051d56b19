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

#include "frictrack/observers.hpp"

#include <cmath>
#include <numbers>

namespace frictrack {

double logcosh(double z) {
  const double a = std::abs(z);
  return a - std::numbers::ln2 + std::log1p(std::exp(-2.0 * a));
}

IandIOutputs ii_outputs(const IandIState& s, double x1, double vartheta) {
  IandIOutputs o;
  o.x2_hat = s.x2I + s.k1 * x1;
  o.theta1_hat = s.theta1I - vartheta / (2.0 * s.k1) * o.x2_hat * o.x2_hat;
  o.theta2_hat = s.theta2I - logcosh(vartheta * o.x2_hat) / s.k1;
  return o;
}

IandIDeriv ii_deriv(const IandIState& s, double x1, double u, double vartheta) {
  const IandIOutputs o = ii_outputs(s, x1, vartheta);
  const double relay = std::tanh(vartheta * o.x2_hat);

  IandIDeriv d;
  d.x2I = -(o.theta1_hat + s.k1) * o.x2_hat - o.theta2_hat * relay + u;
  // common factor (x2I' + k1*x2_hat), using the x2I' just computed
  const double drive = vartheta / s.k1 * (d.x2I + s.k1 * o.x2_hat);
  d.theta1I = drive * o.x2_hat;
  d.theta2I = drive * relay;
  return d;
}

Vec2 sm_regressor(double x2_hat, double x2_true, double vartheta) {
  return {-x2_hat, -std::tanh(vartheta * x2_true)};
}

bool is_spd(const Mat2& m) { return m[0] > 0.0 && (m[0] * m[3] - m[1] * m[2]) > 0.0; }

SMDeriv sm_deriv(const SMState& s, double x1_meas, double x2_true, double u, double vartheta,
                 const SignMode& mode, double t) {
  const Mat2& g = s.gamma;
  if (!is_spd(g)) throw CovarianceDegenerate(t, g[0], g[0] * g[3] - g[1] * g[2]);

  const double innovation = x1_meas - s.x1_hat;
  const double relay = sgn(innovation, mode);
  const Vec2 phi = sm_regressor(s.x2_hat, x2_true, vartheta);

  SMDeriv d;
  d.x1_hat = s.x2_hat + s.c2 * std::sqrt(std::abs(innovation)) * relay;
  d.x2_hat = u + phi[0] * s.theta_bar[0] + phi[1] * s.theta_bar[1] + s.c1 * relay;

  // gamma*phi, then the prediction-error drive -phi^T*delta + c1*sgn
  const Vec2 gphi{g[0] * phi[0] + g[1] * phi[1], g[2] * phi[0] + g[3] * phi[1]};
  const double err = -(phi[0] * s.delta_theta_hat[0] + phi[1] * s.delta_theta_hat[1]) + s.c1 * relay;
  d.delta_theta_hat = {gphi[0] * err, gphi[1] * err};

  // -(gamma phi)(phi^T gamma)
  const Vec2 phig{phi[0] * g[0] + phi[1] * g[2], phi[0] * g[1] + phi[1] * g[3]};
  d.gamma = {-gphi[0] * phig[0], -gphi[0] * phig[1], -gphi[1] * phig[0], -gphi[1] * phig[1]};
  return d;
}

}  // namespace frictrack
