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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <fmt/format.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frictrack/config.hpp"
#include "frictrack/controller.hpp"
#include "frictrack/run_log.hpp"
#include "frictrack/scenario.hpp"
#include "frictrack/sim_core.hpp"

namespace ft = frictrack;

namespace {

// Pinned tolerances.
constexpr double kIdealLawTol = 1e-6;
constexpr double kRk4MinOrder = 3.98;
constexpr double kIandIObsTol = 1e-3;       // |x2 - x2_hat| for t > 20
constexpr double kIandITrackTol = 1e-2;     // |x1 - r| on settled constant segments
constexpr double kNoisyTrackTol = 5e-2;     // post-transient |x1 - r|, noisy I&I
constexpr double kMinThetaError = 0.05;     // |theta1_hat - theta1| at t_end
constexpr double kSMObsTol = 1e-2;          // SM post-transient |x2 - x2_hat|
constexpr double kChatterRatio = 5.0;       // TV(u) on [100,150], SM over I&I
constexpr double kNoiseDegradation = 10.0;  // SM noisy over noise-free observer error
constexpr double kSweepBudget = 60.0;       // seconds
constexpr double kTransientEnd = 20.0;
constexpr double kTvWindowStart = 100.0;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

/// Settled parts of constant reference segments: from 20 s after a hold starts
/// until the next breakpoint.
bool in_settled_hold(const ft::PiecewiseReference& ref, double t) {
  const auto& segs = ref.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (segs[i].kind != ft::Segment::Kind::hold) continue;
    const double lo = segs[i].t_start + kTransientEnd;
    const double hi = i + 1 < segs.size() ? segs[i + 1].t_start : INFINITY;
    if (t >= lo && t < hi) return true;
  }
  return false;
}

/// Per-run observations gathered from the step callback on the full grid.
struct Trace {
  ft::RunResult result;
  double max_obs_after_transient = 0.0;  // t > 20
  double max_track_settled_hold = 0.0;
  double max_track_window = 0.0;  // t >= window start
  double tv_u_late = 0.0;         // t in [100, t_end]
  bool gamma_ok = true;
  std::string gamma_msg;
  bool identity_ok = true;
  std::string identity_msg;
  std::size_t steps = 0;
};

Trace trace_run(const ft::ScenarioConfig& cfg) {
  Trace tr;
  const double ws = ft::window_start(cfg);
  const double h = cfg.integrator.step_h;
  const std::array<ft::Vec2, 3> probes{ft::Vec2{1, 0}, ft::Vec2{0, 1}, ft::Vec2{1, 1}};
  const auto quad = [](const ft::Mat2& g, const ft::Vec2& v) {
    return v[0] * (g[0] * v[0] + g[1] * v[1]) + v[1] * (g[2] * v[0] + g[3] * v[1]);
  };
  std::optional<ft::Mat2> prev_gamma;
  std::optional<double> prev_u;

  tr.result = ft::run_scenario(cfg, [&](const ft::StepRecord& r) {
    ++tr.steps;
    const double e1 = std::abs(r.x.x1 - r.ref.r);
    if (r.t > kTransientEnd) {
      tr.max_obs_after_transient = std::max(tr.max_obs_after_transient, std::abs(r.x2_hat - r.x.x2));
    }
    if (in_settled_hold(cfg.reference, r.t)) {
      tr.max_track_settled_hold = std::max(tr.max_track_settled_hold, e1);
    }
    if (r.t >= ws) tr.max_track_window = std::max(tr.max_track_window, e1);
    if (r.t >= kTvWindowStart - 1e-9) {
      if (prev_u) tr.tv_u_late += std::abs(r.u - *prev_u);
      prev_u = r.u;
    }

    if (cfg.observer == ft::ObserverKind::slidingmode) {
      if (tr.gamma_ok && r.gamma[1] != r.gamma[2]) {
        tr.gamma_ok = false;
        tr.gamma_msg = fmt::format("asymmetric at t={}", r.t);
      }
      if (tr.gamma_ok && !ft::is_spd(r.gamma)) {
        tr.gamma_ok = false;
        tr.gamma_msg = fmt::format("not SPD at t={}", r.t);
      }
      if (tr.gamma_ok && prev_gamma) {
        for (const auto& v : probes) {
          if (quad(r.gamma, v) > quad(*prev_gamma, v) + h * h) {
            tr.gamma_ok = false;
            tr.gamma_msg = fmt::format("v'Gv grew at t={}", r.t);
          }
        }
      }
      prev_gamma = r.gamma;
    } else if (tr.identity_ok && r.x2_hat != r.ii.x2I + r.ii.k1 * r.y) {
      tr.identity_ok = false;
      tr.identity_msg = fmt::format("x2_hat != x2I + k1*y at t={}", r.t);
    }
  });
  return tr;
}

ft::ScenarioConfig make_cfg(ft::ObserverKind kind, double amplitude) {
  ft::ScenarioConfig cfg;
  cfg.observer = kind;
  cfg.noise.amplitude = amplitude;
  return cfg;
}

std::string csv_bytes(const ft::RunLog& log, const std::string& name) {
  const auto path = std::filesystem::temp_directory_path() / name;
  ft::write_csv(log, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  std::filesystem::remove(path);
  return ss.str();
}

Outcome ideal_law_oracle() {
  const ft::PlantParams p;
  const ft::ControllerGains g;
  const auto ref = ft::PiecewiseReference::standard_profile();
  ft::IntegratorConfig cfg;
  const auto f = [&](double t, const std::array<double, 2>& s) {
    const ft::PlantState ps{s[0], s[1]};
    const auto d = ft::plant_deriv(ps, ft::ideal_control(ps, ft::reference_eval(ref, t), p, g), p);
    return std::array<double, 2>{d.x1, d.x2};
  };
  // e1(t) = (e0 + (e0' + 0.7 e0) t) exp(-0.7 t) on the first hold (r = 1)
  std::array<double, 2> x{0.1, 0.5};
  const double e0 = x[0] - 1.0, de0 = x[1];
  double worst = 0.0;
  for (std::int64_t k = 0;; ++k) {
    const double t = ft::grid_time(k, cfg.step_h);
    if (t >= 50.0) break;
    const double exact = (e0 + (de0 + 0.7 * e0) * t) * std::exp(-0.7 * t);
    worst = std::max(worst, std::abs((x[0] - 1.0) - exact));
    x = ft::integrate_step(f, x, t, cfg);
  }
  return {worst < kIdealLawTol, fmt::format("max |e1 - closed form| on [0,50) = {:.3e} (tol {:.0e})",
                                            worst, kIdealLawTol)};
}

Outcome rk4_order() {
  const auto err = [](double h) {
    ft::IntegratorConfig cfg;
    cfg.step_h = h;
    cfg.t_end = 1.0;
    std::array<double, 1> x{1.0};
    const auto f = [](double, const std::array<double, 1>& s) { return std::array<double, 1>{-s[0]}; };
    for (std::int64_t k = 0; k < ft::step_count(cfg); ++k) x = ft::integrate_step(f, x, k * h, cfg);
    return std::abs(x[0] - std::exp(-1.0));
  };
  const double e1 = err(1.0 / 20), e2 = err(1.0 / 40), e3 = err(1.0 / 80);
  const double p1 = std::log2(e1 / e2), p2 = std::log2(e2 / e3);
  const double order = std::min(p1, p2);
  return {order >= kRk4MinOrder,
          fmt::format("observed orders {:.4f}, {:.4f} (min {})", p1, p2, kRk4MinOrder)};
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  std::printf("frictrack acceptance suite\n");

  report(1, "ideal-law closed loop vs critically damped solution", ideal_law_oracle());
  report(2, "RK4 empirical convergence order", rk4_order());

  const Trace ii_clean = trace_run(make_cfg(ft::ObserverKind::iandi, 0.0));
  const Trace ii_noisy = trace_run(make_cfg(ft::ObserverKind::iandi, ft::kDefaultNoiseAmplitude));
  const Trace sm_clean = trace_run(make_cfg(ft::ObserverKind::slidingmode, 0.0));
  const Trace sm_noisy = trace_run(make_cfg(ft::ObserverKind::slidingmode, ft::kDefaultNoiseAmplitude));

  {
    const bool ok = !ii_clean.result.metrics.diverged &&
                    ii_clean.max_obs_after_transient < kIandIObsTol &&
                    ii_clean.max_track_settled_hold < kIandITrackTol;
    report(3, "I&I noise-free observation and tracking",
           {ok, fmt::format("max |x2-x2_hat| (t>20) = {:.3e} (tol {:.0e}); max |x1-r| on settled "
                            "holds = {:.3e} (tol {:.0e})",
                            ii_clean.max_obs_after_transient, kIandIObsTol,
                            ii_clean.max_track_settled_hold, kIandITrackTol)});
  }
  {
    const auto& m = ii_noisy.result.metrics;
    const bool ok = !m.diverged && ii_noisy.max_track_window < kNoisyTrackTol;
    report(4, "I&I noisy run completes and tracks",
           {ok, fmt::format("diverged = {}; max |x1-r| on [{:g},150] = {:.3e} (tol {:.0e}); rms = {:.3e}",
                            m.diverged ? "yes" : "no", m.window_start, ii_noisy.max_track_window,
                            kNoisyTrackTol, m.rms_tracking_error)});
  }
  {
    const double a = ii_clean.result.metrics.theta_error_final[0];
    const double b = ii_noisy.result.metrics.theta_error_final[0];
    report(5, "theta1 estimate does not converge (both I&I runs)",
           {std::abs(a) > kMinThetaError && std::abs(b) > kMinThetaError,
            fmt::format("theta1 error at t_end: noise-free {:.4f}, noisy {:.4f} (need |.| > {})", a, b,
                        kMinThetaError)});
  }
  {
    const auto& m = sm_clean.result.metrics;
    const double ratio = sm_clean.tv_u_late / ii_clean.tv_u_late;
    const bool obs_ok = !m.diverged && m.max_observer_error < kSMObsTol;
    const bool chat_ok = ratio >= kChatterRatio;
    report(6, "SM noise-free observation and chattering",
           {obs_ok && chat_ok,
            fmt::format("max |x2-x2_hat| on [{:g},150] = {:.3e} (tol {:.0e}) {}; TV(u) on [100,150] "
                        "SM {:.4g} vs I&I {:.4g}, ratio {:.3g} (need >= {}) {}",
                        m.window_start, m.max_observer_error, kSMObsTol, obs_ok ? "ok" : "MISSED",
                        sm_clean.tv_u_late, ii_clean.tv_u_late, ratio, kChatterRatio,
                        chat_ok ? "ok" : "MISSED")});
  }
  {
    const auto& mn = sm_noisy.result.metrics;
    const auto& mc = sm_clean.result.metrics;
    const double ratio = mn.max_observer_error / mc.max_observer_error;
    const bool ok = mn.diverged || ratio >= kNoiseDegradation;
    report(7, "SM noisy run degrades",
           {ok, fmt::format("diverged = {}; max observer error noisy {:.3e} vs noise-free {:.3e}, "
                            "ratio {:.3g} (need >= {})",
                            mn.diverged ? "yes" : "no", mn.max_observer_error, mc.max_observer_error,
                            ratio, kNoiseDegradation)});
  }
  {
    const std::vector<double> k1s{1.0, 44.0, 88.0, 150.0};
    const auto s0 = std::chrono::steady_clock::now();
    const auto rows = ft::k1_sweep(k1s, true, ft::ScenarioConfig{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
    bool ok = secs < kSweepBudget;
    std::string detail;
    for (const auto& r : rows) {
      const bool want_stable = r.k1 <= 88.0;
      ok = ok && (r.stable == want_stable);
      detail += fmt::format("k1={:g} {} (max obs err {:.4f}{}); ", r.k1, r.stable ? "stable" : "degraded",
                            r.metrics.max_observer_error, r.stable == want_stable ? "" : ", UNEXPECTED");
    }
    detail += fmt::format("threshold {}; {:.1f} s (budget {:g} s)",
                          ft::ScenarioConfig{}.metrics.degraded_threshold, secs, kSweepBudget);
    report(8, "noisy k1 sweep verdicts", {ok, detail});
  }
  {
    const double rate = ft::lyapunov_rate(1.0, ft::PlantParams{});
    report(9, "Lyapunov decay coefficient at k1 = 1",
           {rate == 1.014e6, fmt::format("{:.17g} (expected 1014000 exactly)", rate)});
  }
  {
    std::vector<std::string> problems;
    for (const Trace* t : {&sm_clean, &sm_noisy}) {
      if (!t->gamma_ok) problems.push_back("gamma: " + t->gamma_msg);
    }
    for (const Trace* t : {&ii_clean, &ii_noisy}) {
      if (!t->identity_ok) problems.push_back("I&I: " + t->identity_msg);
    }
    for (const auto kind : {ft::ObserverKind::iandi, ft::ObserverKind::slidingmode}) {
      auto cfg = make_cfg(kind, ft::kDefaultNoiseAmplitude);
      cfg.seed = 2024;
      const auto a = ft::run_scenario(cfg);
      const auto b = ft::run_scenario(cfg);
      if (csv_bytes(a.log, "frictrack_acc_a.csv") != csv_bytes(b.log, "frictrack_acc_b.csv")) {
        problems.push_back(fmt::format("{} CSVs differ for a repeated seed", ft::to_string(kind)));
      }
    }
    {
      auto cfg = make_cfg(ft::ObserverKind::iandi, 0.0);
      cfg.seed = 99;
      if (!(ft::run_scenario(cfg).log == ii_clean.result.log)) {
        problems.push_back("noise-free I&I log depends on the seed");
      }
      cfg.observer = ft::ObserverKind::slidingmode;
      if (!(ft::run_scenario(cfg).log == sm_clean.result.log)) {
        problems.push_back("noise-free SM log depends on the seed");
      }
    }
    std::string detail = fmt::format(
        "gamma symmetric/SPD/non-increasing on {} SM steps; I&I output-map identity on {} steps; "
        "repeated-seed CSVs; seed independence at a = 0",
        sm_clean.steps + sm_noisy.steps, ii_clean.steps + ii_noisy.steps);
    for (const auto& p : problems) detail += "; " + p;
    report(10, "property suite", {problems.empty(), detail});
  }

  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d of 10 criteria failed; wall time %.1f s\n", failures, total);
  return failures == 0 ? 0 : 1;
}
