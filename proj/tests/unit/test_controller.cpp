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

#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "frictrack/controller.hpp"
#include "frictrack/errors.hpp"
#include "frictrack/sim_core.hpp"

namespace ft = frictrack;

namespace {
const ft::PlantParams kP{};
const ft::ControllerGains kG{};
}  // namespace

TEST(IdealControl, Examples) {
  EXPECT_EQ(ft::ideal_control({1.0, 0.0}, {1.0, 0.0, 0.0}, kP, kG), 0.0);
  EXPECT_NEAR(ft::ideal_control({0.1, 0.5}, {1.0, 0.0, 0.0}, kP, kG), 0.941, 1e-12);
  const ft::ControllerGains doubled{2 * kG.alpha1, kG.alpha2};
  EXPECT_EQ(ft::ideal_control({1.0, 0.3}, {1.0, 0.1, 0.0}, kP, kG),
            ft::ideal_control({1.0, 0.3}, {1.0, 0.1, 0.0}, kP, doubled));
}

TEST(CeControl, Examples) {
  const double u = ft::ce_control(0.1, 0.1, {-0.5, -9.306852821501208}, {1.0, 0.0, 0.0}, 100.0, kG);
  EXPECT_NEAR(u, -9.055852783135502, 1e-12);

  for (const double x2 : {-0.6, 0.0, 0.02, 0.5}) {
    const ft::ReferenceSample ref{1.2, -0.05, 0.0};
    EXPECT_EQ(ft::ce_control(0.9, x2, {kP.theta1, kP.theta2}, ref, kP.vartheta, kG),
              ft::ideal_control({0.9, x2}, ref, kP, kG));
  }
  const double base = ft::ce_control(0.3, 0.2, {1.0, 2.0}, {1.0, 0.0, 0.0}, 100.0, kG);
  const double shifted = ft::ce_control(0.3, 0.2, {1.0, 2.0}, {1.0, 0.0, 0.75}, 100.0, kG);
  EXPECT_DOUBLE_EQ(shifted - base, 0.75);
}

TEST(ControllerGains, Validation) {
  EXPECT_NO_THROW(ft::validate(kG));
  try {
    ft::validate(ft::ControllerGains{0.0, 1.4});
    FAIL();
  } catch (const ft::ConfigError& e) {
    EXPECT_EQ(e.field(), "controller.alpha1");
  }
  EXPECT_THROW(ft::validate(ft::ControllerGains{0.49, -1.0}), ft::ConfigError);
}

TEST(EpsilonT, VanishesWithExactEstimates) {
  const ft::PlantState x{0.7, 0.3};
  const ft::ReferenceSample ref{1.0, 0.0, 0.0};
  const auto e = ft::epsilon_t(x, x.x2, {kP.theta1, kP.theta2}, kP, kG, ref, x.x1);
  EXPECT_EQ(e.formula, 0.0);
  EXPECT_NEAR(e.residual, 0.0, 1e-15);
}

TEST(EpsilonT, SaturatedVelocityErrorExposesSignOfDampingTerm) {
  const ft::PlantState x{0.7, 0.5};
  const ft::ReferenceSample ref{1.0, 0.0, 0.0};
  for (const double delta : {1e-3, 0.01, -0.02}) {
    const auto e = ft::epsilon_t(x, x.x2 + delta, {kP.theta1, kP.theta2}, kP, kG, ref, x.x1);
    EXPECT_NEAR(e.residual, (kP.theta1 - kG.alpha2) * delta, 1e-12);
    EXPECT_NEAR(e.formula, (kP.theta1 + kG.alpha2) * delta, 1e-12);
    EXPECT_NEAR(e.formula - e.residual, 2 * kG.alpha2 * delta, 1e-12);
  }
}

TEST(EpsilonT, LinearInSmallErrors) {
  const ft::PlantState x{0.2, 0.4};
  const ft::ReferenceSample ref{1.0, 0.0, 0.0};
  const auto at = [&](double s) {
    return ft::epsilon_t(x, x.x2 + 0.1 * s, {kP.theta1 + 0.3 * s, kP.theta2 - 0.2 * s}, kP, kG, ref,
                         x.x1);
  };
  const auto a = at(1e-4), b = at(2e-4);
  EXPECT_NEAR(b.formula / a.formula, 2.0, 1e-3);
  EXPECT_NEAR(b.residual / a.residual, 2.0, 1e-3);
}

// Known parameters and full state: e1'' + 1.4 e1' + 0.49 e1 = 0, double pole at -0.7.
TEST(IdealClosedLoop, MatchesCriticallyDampedSolution) {
  const auto ref = ft::ReferenceSample{1.0, 0.0, 0.0};
  ft::IntegratorConfig cfg;
  const auto f = [&](double, const std::array<double, 2>& s) {
    const ft::PlantState ps{s[0], s[1]};
    const auto d = ft::plant_deriv(ps, ft::ideal_control(ps, ref, kP, kG), kP);
    return std::array<double, 2>{d.x1, d.x2};
  };
  std::array<double, 2> x{0.1, 0.5};
  const double e0 = -0.9, de0 = 0.5;
  double worst = 0.0;
  for (std::int64_t k = 0; k < 200000; ++k) {
    const double t = ft::grid_time(k, cfg.step_h);
    const double exact = (e0 + (de0 + 0.7 * e0) * t) * std::exp(-0.7 * t);
    worst = std::max(worst, std::abs((x[0] - 1.0) - exact));
    x = ft::integrate_step(f, x, t, cfg);
  }
  EXPECT_LT(worst, 1e-6);
}
