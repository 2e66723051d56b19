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

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "frictrack/controller.hpp"
#include "frictrack/observers.hpp"
#include "frictrack/plant.hpp"
#include "frictrack/reference.hpp"
#include "frictrack/run_log.hpp"
#include "frictrack/sim_core.hpp"

namespace frictrack {

/// Noise level used in the noisy study, relative to the position.
inline constexpr double kDefaultNoiseAmplitude = 3e-4;

enum class ObserverKind { iandi, slidingmode };

enum class NoiseModel {
  multiplicative,  // y = x1 * (1 + a*w)
  additive,        // y = x1 + a*w
};

/// Which velocity feeds the second regressor entry tanh(vartheta * v).
enum class RegressorVelocity { true_state, estimate };

/// Which position the sliding-mode innovation x1 - x1_hat is built from.
enum class InnovationSource { measured, true_state };

struct IandIGains {
  double k1 = 1.0;
  double x2I0 = 0.0;
  double theta1I0 = 0.0;
  double theta2I0 = 0.0;

  bool operator==(const IandIGains&) const = default;
};

struct SlidingModeGains {
  double c1 = 0.5;
  double c2 = 25.0;
  Mat2 gamma0{500.0, 0.0, 0.0, 500.0};
  Vec2 theta_bar{0.2, 0.5};
  double x1_hat0 = 0.0;
  double x2_hat0 = 0.1;
  /// When unset, chosen so that the initial parameter estimate matches the
  /// I&I output map at x2_hat0 with k1 = 1 and zero integrator states.
  std::optional<Vec2> delta_theta0;
  RegressorVelocity regressor = RegressorVelocity::true_state;
  InnovationSource innovation = InnovationSource::measured;

  bool operator==(const SlidingModeGains&) const = default;
};

struct NoiseConfig {
  double amplitude = 0.0;
  double rate_hz = 1000.0;
  NoiseModel model = NoiseModel::multiplicative;

  bool operator==(const NoiseConfig&) const = default;
};

struct MetricsConfig {
  /// Start of the post-transient window; t_end/2 when unset.
  std::optional<double> window_start;
  /// Sweep verdict: degraded when max observer error exceeds this.
  double degraded_threshold = 0.05;
  /// |x1 - r| band used for settle_time.
  double settle_band = 0.02;

  bool operator==(const MetricsConfig&) const = default;
};

struct ScenarioConfig {
  ObserverKind observer = ObserverKind::iandi;
  PlantParams plant{};
  ControllerGains gains{};
  IandIGains iandi{};
  SlidingModeGains sm{};
  IntegratorConfig integrator{};
  NoiseConfig noise{};
  std::uint64_t seed = 0;
  PlantState initial{0.1, 0.5};
  PiecewiseReference reference = PiecewiseReference::standard_profile();
  int decimation = 10;
  /// Any state component beyond this magnitude counts as a blowup.
  double divergence_bound = 1e6;
  MetricsConfig metrics{};

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the first violated field.
void validate(const ScenarioConfig& cfg);

double window_start(const ScenarioConfig& cfg);

/// Initial increment of the SM adaptation state.
Vec2 initial_delta_theta(const ScenarioConfig& cfg);

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

/// Uniform [-1, 1] samples held constant over 1/rate_hz intervals. The k-th
/// hold interval always receives the k-th draw of the seeded stream, whatever
/// the integration step.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, double rate_hz);

  /// w for the hold interval containing t. Times must be non-decreasing.
  double sample(double t);

 private:
  double draw();

  std::mt19937_64 rng_;
  double rate_hz_;
  std::int64_t index_ = -1;
  double w_ = 0.0;
};

/// y = x1*(1 + a*w) (multiplicative) or x1 + a*w (additive).
inline double measure(double x1, double w, const NoiseConfig& noise) {
  if (noise.model == NoiseModel::additive) return x1 + noise.amplitude * w;
  return x1 * (1.0 + noise.amplitude * w);
}

// ---------------------------------------------------------------------------
// Closed-loop run
// ---------------------------------------------------------------------------

/// Everything known at one grid point. Fields of the inactive observer stay 0.
struct StepRecord {
  double t = 0.0;
  ReferenceSample ref{};
  PlantState x{};
  double y = 0.0;
  double w = 0.0;
  double x1_hat = 0.0;
  double x2_hat = 0.0;
  Vec2 theta_hat{0.0, 0.0};
  double u = 0.0;
  double u_star = 0.0;
  EpsilonT eps{};
  IandIState ii{};
  Vec2 delta_theta_hat{0.0, 0.0};
  Mat2 gamma{0.0, 0.0, 0.0, 0.0};
};

/// Invoked at every grid point (undecimated), t = 0 included.
using StepCallback = std::function<void(const StepRecord&)>;

struct Metrics {
  double window_start = 0.0;
  double rms_tracking_error = 0.0;
  double max_observer_error = 0.0;
  Vec2 theta_error_final{0.0, 0.0};
  double control_total_variation = 0.0;
  bool diverged = false;
  double diverged_at = 0.0;  // meaningful only when diverged
  std::optional<double> settle_time;
};

struct Failure {
  enum class Kind { numerical_blowup, covariance_degenerate };
  Kind kind = Kind::numerical_blowup;
  double t = 0.0;
  std::string message;
};

struct RunResult {
  RunLog log;
  Metrics metrics;
  std::optional<Failure> failure;
};

/// Integrates plant, observer and ce_control on one grid. Numerical failures
/// do not throw: they end the run and are reported in `failure` and
/// `metrics.diverged`. Throws ConfigError for an invalid cfg.
RunResult run_scenario(const ScenarioConfig& cfg, const StepCallback& on_step = {});

// ---------------------------------------------------------------------------
// Metrics helpers
// ---------------------------------------------------------------------------

/// Sum of |s[k+1] - s[k]|. Throws InvalidInput for fewer than 2 samples.
double total_variation(std::span<const double> series);

/// Decay coefficient vartheta^2 (k1 + theta1 + theta2*vartheta) of the I&I
/// Lyapunov bound.
double lyapunov_rate(double k1, const PlantParams& p);

// ---------------------------------------------------------------------------
// k1 sweep
// ---------------------------------------------------------------------------

struct SweepRow {
  double k1 = 0.0;
  bool noisy = false;
  bool stable = false;
  Metrics metrics{};
  std::string error;  // empty unless the run failed
};

/// One I&I run per k1 on a worker pool; rows come back in input order. With
/// `noisy`, the base amplitude is used if positive, otherwise the nominal level.
std::vector<SweepRow> k1_sweep(std::span<const double> values, bool noisy,
                               const ScenarioConfig& base, unsigned workers = 0);

}  // namespace frictrack
