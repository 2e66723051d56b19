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

#include "frictrack/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string_view>
#include <thread>

#include "frictrack/errors.hpp"

namespace frictrack {

namespace {

void require_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, fmt::format("must be > 0 (got {})", v));
}

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
}

}  // namespace

void validate(const ScenarioConfig& cfg) {
  validate(cfg.plant);
  validate(cfg.gains);
  require_positive(cfg.integrator.step_h, "integrator.step");
  require_positive(cfg.integrator.t_end, "duration");
  if (cfg.integrator.t_end < cfg.integrator.step_h) throw ConfigError("duration", "shorter than one step");
  if (cfg.integrator.sign_mode.kind == SignMode::Kind::boundary_layer) {
    require_positive(cfg.integrator.sign_mode.eps, "integrator.eps");
  }
  if (!(cfg.noise.amplitude >= 0.0) || !std::isfinite(cfg.noise.amplitude)) {
    throw ConfigError("noise_amplitude", "must be >= 0");
  }
  require_positive(cfg.noise.rate_hz, "noise.rate");
  if (cfg.noise.rate_hz * cfg.integrator.step_h > 1.0 + 1e-12) {
    throw ConfigError("noise.rate", "measurement rate exceeds 1/step");
  }
  require_finite(cfg.initial.x1, "initial.x1");
  require_finite(cfg.initial.x2, "initial.x2");
  if (cfg.decimation < 1) throw ConfigError("log.decimation", "must be >= 1");
  require_positive(cfg.divergence_bound, "divergence_bound");
  require_positive(cfg.metrics.degraded_threshold, "metrics.degraded_threshold");
  require_positive(cfg.metrics.settle_band, "metrics.settle_band");
  if (cfg.metrics.window_start) {
    const double ws = *cfg.metrics.window_start;
    if (!(ws >= 0.0 && ws <= cfg.integrator.t_end)) {
      throw ConfigError("metrics.window_start", "must lie in [0, duration]");
    }
  }

  if (cfg.observer == ObserverKind::iandi) {
    require_positive(cfg.iandi.k1, "iandi.k1");
    require_finite(cfg.iandi.x2I0, "iandi.x2I0");
    require_finite(cfg.iandi.theta1I0, "iandi.theta1I0");
    require_finite(cfg.iandi.theta2I0, "iandi.theta2I0");
  } else {
    const auto& sm = cfg.sm;
    require_positive(sm.c1, "slidingmode.c1");
    require_positive(sm.c2, "slidingmode.c2");
    if (sm.gamma0[1] != sm.gamma0[2]) throw ConfigError("slidingmode.gamma0", "must be symmetric");
    if (!is_spd(sm.gamma0)) throw ConfigError("slidingmode.gamma0", "must be positive-definite");
    require_finite(sm.theta_bar[0], "slidingmode.theta_bar");
    require_finite(sm.theta_bar[1], "slidingmode.theta_bar");
    require_finite(sm.x1_hat0, "slidingmode.x1_hat0");
    require_finite(sm.x2_hat0, "slidingmode.x2_hat0");
    if (sm.delta_theta0) {
      require_finite((*sm.delta_theta0)[0], "slidingmode.delta_theta0");
      require_finite((*sm.delta_theta0)[1], "slidingmode.delta_theta0");
    }
  }
}

double window_start(const ScenarioConfig& cfg) {
  return cfg.metrics.window_start.value_or(0.5 * cfg.integrator.t_end);
}

Vec2 initial_delta_theta(const ScenarioConfig& cfg) {
  if (cfg.sm.delta_theta0) return *cfg.sm.delta_theta0;
  // x2I chosen so that x2_hat(0) = sm.x2_hat0 under the I&I output map with k1 = 1
  const IandIState ii{cfg.sm.x2_hat0 - cfg.initial.x1, 0.0, 0.0, 1.0};
  const IandIOutputs o = ii_outputs(ii, cfg.initial.x1, cfg.plant.vartheta);
  return {o.theta1_hat - cfg.sm.theta_bar[0], o.theta2_hat - cfg.sm.theta_bar[1]};
}

// ---------------------------------------------------------------------------

NoiseStream::NoiseStream(std::uint64_t seed, double rate_hz) : rng_(seed), rate_hz_(rate_hz) {}

double NoiseStream::draw() {
  // 53 random bits -> [0, 1) -> [-1, 1); independent of the stdlib distributions
  const double unit = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

double NoiseStream::sample(double t) {
  const double pos = t * rate_hz_;
  const double nearest = std::round(pos);
  const auto idx = static_cast<std::int64_t>(
      std::abs(pos - nearest) <= 1e-9 * std::max(1.0, nearest) ? nearest : std::floor(pos));
  while (index_ < idx) {
    w_ = draw();
    ++index_;
  }
  return w_;
}

// ---------------------------------------------------------------------------

namespace {

class IandISystem {
 public:
  static constexpr std::size_t N = 5;
  using State = std::array<double, N>;
  static constexpr std::array<std::string_view, N> names{"x1", "x2", "x2I", "theta1I", "theta2I"};
  static constexpr bool has_x1_hat = false;

  explicit IandISystem(const ScenarioConfig& cfg) : cfg_(cfg) {}

  State initial() const {
    return {cfg_.initial.x1, cfg_.initial.x2, cfg_.iandi.x2I0, cfg_.iandi.theta1I0,
            cfg_.iandi.theta2I0};
  }

  State deriv(double t, const State& x, double w) const {
    const double vt = cfg_.plant.vartheta;
    const double y = measure(x[0], w, cfg_.noise);
    const ReferenceSample ref = reference_eval(cfg_.reference, t);
    const IandIState s = observer_state(x);
    const IandIOutputs o = ii_outputs(s, y, vt);
    const double u = ce_control(y, o.x2_hat, {o.theta1_hat, o.theta2_hat}, ref, vt, cfg_.gains);
    const PlantState pd = plant_deriv({x[0], x[1]}, u, cfg_.plant);
    const IandIDeriv od = ii_deriv(s, y, u, vt);
    return {pd.x1, pd.x2, od.x2I, od.theta1I, od.theta2I};
  }

  void post_step(State&, double) const {}

  StepRecord record(double t, const State& x, double w) const {
    StepRecord rec;
    rec.t = t;
    rec.w = w;
    rec.ref = reference_eval(cfg_.reference, t);
    rec.x = {x[0], x[1]};
    rec.y = measure(x[0], w, cfg_.noise);
    rec.ii = observer_state(x);
    const IandIOutputs o = ii_outputs(rec.ii, rec.y, cfg_.plant.vartheta);
    rec.x2_hat = o.x2_hat;
    rec.theta_hat = {o.theta1_hat, o.theta2_hat};
    return rec;
  }

 private:
  IandIState observer_state(const State& x) const { return {x[2], x[3], x[4], cfg_.iandi.k1}; }

  const ScenarioConfig& cfg_;
};

class SlidingModeSystem {
 public:
  static constexpr std::size_t N = 10;
  using State = std::array<double, N>;
  static constexpr std::array<std::string_view, N> names{
      "x1", "x2", "x1_hat", "x2_hat", "delta_theta1", "delta_theta2",
      "gamma11", "gamma12", "gamma21", "gamma22"};
  static constexpr bool has_x1_hat = true;

  explicit SlidingModeSystem(const ScenarioConfig& cfg) : cfg_(cfg) {}

  State initial() const {
    const Vec2 d0 = initial_delta_theta(cfg_);
    const Mat2& g = cfg_.sm.gamma0;
    return {cfg_.initial.x1, cfg_.initial.x2, cfg_.sm.x1_hat0, cfg_.sm.x2_hat0, d0[0], d0[1],
            g[0], g[1], g[2], g[3]};
  }

  State deriv(double t, const State& x, double w) const {
    const double vt = cfg_.plant.vartheta;
    const double y = measure(x[0], w, cfg_.noise);
    const ReferenceSample ref = reference_eval(cfg_.reference, t);
    const SMState s = observer_state(x);
    const double u = ce_control(y, s.x2_hat, sm_theta_hat(s), ref, vt, cfg_.gains);
    const PlantState pd = plant_deriv({x[0], x[1]}, u, cfg_.plant);
    const SMDeriv od = sm_deriv(s, innovation_position(x, y), regressor_velocity(x), u, vt,
                                cfg_.integrator.sign_mode, t);
    return {pd.x1, pd.x2, od.x1_hat, od.x2_hat, od.delta_theta_hat[0], od.delta_theta_hat[1],
            od.gamma[0], od.gamma[1], od.gamma[2], od.gamma[3]};
  }

  void post_step(State& x, double t) const {
    Mat2 g{x[6], x[7], x[8], x[9]};
    symmetrize(g);
    if (!is_spd(g)) throw CovarianceDegenerate(t, g[0], g[0] * g[3] - g[1] * g[2]);
    x[7] = g[1];
    x[8] = g[2];
  }

  StepRecord record(double t, const State& x, double w) const {
    StepRecord rec;
    rec.t = t;
    rec.w = w;
    rec.ref = reference_eval(cfg_.reference, t);
    rec.x = {x[0], x[1]};
    rec.y = measure(x[0], w, cfg_.noise);
    const SMState s = observer_state(x);
    rec.x1_hat = s.x1_hat;
    rec.x2_hat = s.x2_hat;
    rec.theta_hat = sm_theta_hat(s);
    rec.delta_theta_hat = s.delta_theta_hat;
    rec.gamma = s.gamma;
    return rec;
  }

 private:
  SMState observer_state(const State& x) const {
    SMState s;
    s.x1_hat = x[2];
    s.x2_hat = x[3];
    s.delta_theta_hat = {x[4], x[5]};
    s.gamma = {x[6], x[7], x[8], x[9]};
    s.theta_bar = cfg_.sm.theta_bar;
    s.c1 = cfg_.sm.c1;
    s.c2 = cfg_.sm.c2;
    return s;
  }

  double innovation_position(const State& x, double y) const {
    return cfg_.sm.innovation == InnovationSource::measured ? y : x[0];
  }

  double regressor_velocity(const State& x) const {
    return cfg_.sm.regressor == RegressorVelocity::true_state ? x[1] : x[3];
  }

  const ScenarioConfig& cfg_;
};

/// Streaming metrics over the full grid.
class MetricsAccumulator {
 public:
  MetricsAccumulator(double window_start, double settle_band, double grid_tol)
      : window_start_(window_start), settle_band_(settle_band), tol_(grid_tol) {
    metrics_.window_start = window_start;
  }

  void add(const StepRecord& rec, const PlantParams& p) {
    const double e1 = rec.x.x1 - rec.ref.r;
    if (std::abs(e1) > settle_band_) last_violation_ = rec.t;
    last_t_ = rec.t;
    metrics_.theta_error_final = {rec.theta_hat[0] - p.theta1, rec.theta_hat[1] - p.theta2};

    if (rec.t + tol_ < window_start_) return;
    sum_sq_ += e1 * e1;
    ++count_;
    metrics_.max_observer_error =
        std::max(metrics_.max_observer_error, std::abs(rec.x2_hat - rec.x.x2));
    if (have_prev_u_) metrics_.control_total_variation += std::abs(rec.u - prev_u_);
    prev_u_ = rec.u;
    have_prev_u_ = true;
  }

  Metrics finish(double h) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (count_ == 0) {
      metrics_.rms_tracking_error = nan;
      metrics_.max_observer_error = nan;
      metrics_.control_total_variation = nan;
    } else {
      metrics_.rms_tracking_error = std::sqrt(sum_sq_ / static_cast<double>(count_));
    }
    if (!last_violation_) {
      metrics_.settle_time = 0.0;
    } else if (*last_violation_ < last_t_) {
      metrics_.settle_time = *last_violation_ + h;
    }
    return metrics_;
  }

 private:
  double window_start_;
  double settle_band_;
  double tol_;
  Metrics metrics_{};
  double sum_sq_ = 0.0;
  std::size_t count_ = 0;
  double prev_u_ = 0.0;
  bool have_prev_u_ = false;
  std::optional<double> last_violation_;
  double last_t_ = 0.0;
};

void complete_record(StepRecord& rec, const ScenarioConfig& cfg) {
  rec.u = ce_control(rec.y, rec.x2_hat, rec.theta_hat, rec.ref, cfg.plant.vartheta, cfg.gains);
  rec.u_star = ideal_control(rec.x, rec.ref, cfg.plant, cfg.gains);
  rec.eps = epsilon_t(rec.x, rec.x2_hat, rec.theta_hat, cfg.plant, cfg.gains, rec.ref, rec.y);
}

std::vector<double> log_row(const StepRecord& rec, bool with_x1_hat) {
  std::vector<double> row{rec.t, rec.ref.r, rec.x.x1, rec.x.x2, rec.y};
  if (with_x1_hat) row.push_back(rec.x1_hat);
  row.insert(row.end(), {rec.x2_hat, rec.theta_hat[0], rec.theta_hat[1], rec.u, rec.u_star,
                         rec.eps.formula, rec.eps.residual});
  return row;
}

template <class System>
RunResult simulate(const ScenarioConfig& cfg, const StepCallback& on_step) {
  using State = typename System::State;
  const System sys(cfg);
  const double h = cfg.integrator.step_h;
  const std::int64_t n = step_count(cfg.integrator);
  const bool noisy = cfg.noise.amplitude != 0.0;

  RunResult result;
  result.log = RunLog(RunLog::standard_columns(System::has_x1_hat), cfg.decimation);
  NoiseStream noise(cfg.seed, cfg.noise.rate_hz);
  MetricsAccumulator acc(window_start(cfg), cfg.metrics.settle_band, 1e-9 * h);

  State x = sys.initial();
  for (std::int64_t k = 0;; ++k) {
    const double t = grid_time(k, h);
    try {
      const double w = noisy ? noise.sample(t) : 0.0;
      StepRecord rec = sys.record(t, x, w);
      complete_record(rec, cfg);
      acc.add(rec, cfg.plant);
      if (k % cfg.decimation == 0) result.log.append(log_row(rec, System::has_x1_hat));
      if (on_step) on_step(rec);
      if (k == n) break;

      const auto field = [&](double ts, const State& xs) { return sys.deriv(ts, xs, w); };
      x = integrate_step(field, x, t, cfg.integrator, System::names);
      const double t_next = grid_time(k + 1, h);
      sys.post_step(x, t_next);
      for (std::size_t i = 0; i < System::N; ++i) {
        if (!std::isfinite(x[i]) || std::abs(x[i]) > cfg.divergence_bound) {
          throw NumericalBlowup(t_next, std::string(System::names[i]));
        }
      }
    } catch (const NumericalBlowup& e) {
      result.failure = Failure{Failure::Kind::numerical_blowup, e.time(), e.what()};
      break;
    } catch (const CovarianceDegenerate& e) {
      result.failure = Failure{Failure::Kind::covariance_degenerate, e.time(), e.what()};
      break;
    }
  }

  result.metrics = acc.finish(h);
  if (result.failure) {
    result.metrics.diverged = true;
    result.metrics.diverged_at = result.failure->t;
  }
  return result;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const StepCallback& on_step) {
  validate(cfg);
  if (cfg.observer == ObserverKind::iandi) return simulate<IandISystem>(cfg, on_step);
  return simulate<SlidingModeSystem>(cfg, on_step);
}

// ---------------------------------------------------------------------------

double total_variation(std::span<const double> series) {
  if (series.size() < 2) throw InvalidInput("total_variation needs at least 2 samples");
  double tv = 0.0;
  for (std::size_t k = 1; k < series.size(); ++k) tv += std::abs(series[k] - series[k - 1]);
  return tv;
}

double lyapunov_rate(double k1, const PlantParams& p) {
  if (!(k1 > 0.0)) throw InvalidInput("k1 must be > 0");
  return p.vartheta * p.vartheta * (k1 + p.theta1 + p.theta2 * p.vartheta);
}

std::vector<SweepRow> k1_sweep(std::span<const double> values, bool noisy,
                               const ScenarioConfig& base, unsigned workers) {
  for (const double v : values) {
    if (!(v > 0.0)) throw InvalidInput(fmt::format("k1 values must be > 0 (got {})", v));
  }
  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};

  const auto work = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepRow& row = rows[i];
      row.k1 = values[i];
      row.noisy = noisy;
      ScenarioConfig cfg = base;
      cfg.observer = ObserverKind::iandi;
      cfg.iandi.k1 = values[i];
      cfg.noise.amplitude = noisy ? (base.noise.amplitude > 0.0 ? base.noise.amplitude
                                                                : kDefaultNoiseAmplitude)
                                  : 0.0;
      try {
        const RunResult res = run_scenario(cfg);
        row.metrics = res.metrics;
        if (res.failure) row.error = res.failure->message;
        row.stable = !res.metrics.diverged &&
                     res.metrics.max_observer_error <= cfg.metrics.degraded_threshold;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.stable = false;
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, values.size()));
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  pool.clear();
  return rows;
}

}  // namespace frictrack
