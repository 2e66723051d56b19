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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frictrack/errors.hpp"

namespace frictrack {

enum class Method { euler, rk4 };

/// How relay terms sign(z) are evaluated inside the vector field.
struct SignMode {
  enum class Kind { exact, boundary_layer };
  Kind kind = Kind::exact;
  double eps = 0.0;  // only meaningful for boundary_layer, must be > 0 there

  static SignMode exact() { return {}; }
  static SignMode boundary_layer(double eps) { return {Kind::boundary_layer, eps}; }

  bool operator==(const SignMode&) const = default;
};

struct IntegratorConfig {
  Method method = Method::rk4;
  double step_h = 1e-4;
  double t_end = 150.0;
  SignMode sign_mode{};

  bool operator==(const IntegratorConfig&) const = default;
};

/// Throws InvalidInput when the invariants of `cfg` do not hold.
void validate(const IntegratorConfig& cfg);

/// floor(t_end / step_h), immune to the representation error of decimal steps
/// (150 / 1e-4 must give 1500000, not 1499999).
std::int64_t step_count(const IntegratorConfig& cfg);

/// Time of grid point k. Computed as k*h, never accumulated.
inline double grid_time(std::int64_t k, double step_h) { return static_cast<double>(k) * step_h; }

/// sign(z) with sign(0) = 0, or the saturated ramp clamp(z/eps, -1, 1).
inline double sgn(double z, const SignMode& mode) {
  if (mode.kind == SignMode::Kind::boundary_layer) {
    const double s = z / mode.eps;
    return s > 1.0 ? 1.0 : (s < -1.0 ? -1.0 : s);
  }
  return z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0);
}

namespace detail {

template <class State>
void require_finite(const State& k, double t, std::span<const std::string_view> names) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i])) {
      throw NumericalBlowup(t, i < names.size() ? std::string(names[i])
                                                : "component " + std::to_string(i));
    }
  }
}

template <class State>
State axpy(const State& x, double a, const State& k) {
  State out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += a * k[i];
  return out;
}

}  // namespace detail

/// One explicit Euler or classical RK4 step of x' = field(t, x).
///
/// `State` is any contiguous indexable container of doubles (std::array,
/// std::vector). Every stage output is checked for finiteness; `names`
/// labels components in the NumericalBlowup diagnostic.
template <class State, class Field>
State integrate_step(Field&& field, const State& x, double t, const IntegratorConfig& cfg,
                     std::span<const std::string_view> names = {}) {
  const double h = cfg.step_h;
  if (cfg.method == Method::euler) {
    const State k1 = field(t, x);
    detail::require_finite(k1, t, names);
    return detail::axpy(x, h, k1);
  }
  const State k1 = field(t, x);
  detail::require_finite(k1, t, names);
  const State k2 = field(t + 0.5 * h, detail::axpy(x, 0.5 * h, k1));
  detail::require_finite(k2, t + 0.5 * h, names);
  const State k3 = field(t + 0.5 * h, detail::axpy(x, 0.5 * h, k2));
  detail::require_finite(k3, t + 0.5 * h, names);
  const State k4 = field(t + h, detail::axpy(x, h, k3));
  detail::require_finite(k4, t + h, names);

  State out = x;
  const double w = h / 6.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

/// Dynamically-sized state with named components.
class StateVector {
 public:
  StateVector() = default;
  StateVector(std::vector<std::string> names, std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double at(std::string_view name) const;

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }

  /// Throws NumericalBlowup naming the first non-finite component.
  void require_finite(double t) const;

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
};

/// Named-state overload: same scheme, field acts on the raw values.
template <class Field>
StateVector integrate_step(Field&& field, const StateVector& x, double t,
                           const IntegratorConfig& cfg) {
  x.require_finite(t);
  std::vector<std::string_view> labels(x.names().begin(), x.names().end());
  auto next = integrate_step(field, x.values(), t, cfg, labels);
  return StateVector(x.names(), std::move(next));
}

}  // namespace frictrack
