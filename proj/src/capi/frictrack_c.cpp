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

#include "frictrack/frictrack.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "frictrack/config.hpp"
#include "frictrack/errors.hpp"
#include "frictrack/plots.hpp"
#include "frictrack/report.hpp"
#include "frictrack/run_log.hpp"
#include "frictrack/scenario.hpp"

struct ft_config {
  frictrack::ScenarioConfig cfg;
};

struct ft_run {
  frictrack::ScenarioConfig cfg;
  frictrack::RunResult result;
};

struct ft_sweep {
  std::vector<frictrack::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

ft_status fail(ft_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

/// Runs `fn`, translating library exceptions into status codes.
template <class Fn>
ft_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    return fn();
  } catch (const frictrack::ConfigError& e) {
    return fail(FT_ERR_CONFIG, e.what());
  } catch (const frictrack::NumericalBlowup& e) {
    return fail(FT_ERR_NUMERICAL_BLOWUP, e.what());
  } catch (const frictrack::CovarianceDegenerate& e) {
    return fail(FT_ERR_COVARIANCE_DEGENERATE, e.what());
  } catch (const frictrack::IoError& e) {
    return fail(FT_ERR_IO, e.what());
  } catch (const frictrack::InvalidInput& e) {
    return fail(FT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FT_ERR_INTERNAL, "unknown error");
  }
}

ft_status null_arg(const char* name) {
  return fail(FT_ERR_INVALID_ARGUMENT, std::string(name) + " must not be NULL");
}

ft_status copy_text(const std::string& text, char* buf, size_t cap, size_t* len) {
  if (!len) return null_arg("len");
  *len = text.size();
  if (!buf || cap <= text.size()) {
    if (!buf && cap == 0) return FT_OK;
    return fail(FT_ERR_BUFFER_TOO_SMALL, "buffer too small");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return FT_OK;
}

ft_metrics to_c(const frictrack::Metrics& m) {
  ft_metrics out{};
  out.window_start = m.window_start;
  out.rms_tracking_error = m.rms_tracking_error;
  out.max_observer_error = m.max_observer_error;
  out.theta1_error_final = m.theta_error_final[0];
  out.theta2_error_final = m.theta_error_final[1];
  out.control_total_variation = m.control_total_variation;
  out.diverged = m.diverged ? 1 : 0;
  out.diverged_at = m.diverged_at;
  out.has_settle_time = m.settle_time ? 1 : 0;
  out.settle_time = m.settle_time.value_or(0.0);
  return out;
}

ft_status failure_status(const frictrack::RunResult& r) {
  if (!r.failure) return FT_OK;
  return r.failure->kind == frictrack::Failure::Kind::covariance_degenerate
             ? FT_ERR_COVARIANCE_DEGENERATE
             : FT_ERR_NUMERICAL_BLOWUP;
}

}  // namespace

extern "C" {

const char* ft_version(void) { return "1.0.0"; }

const char* ft_status_string(ft_status status) {
  switch (status) {
    case FT_OK: return "ok";
    case FT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FT_ERR_CONFIG: return "configuration error";
    case FT_ERR_NUMERICAL_BLOWUP: return "numerical blowup";
    case FT_ERR_COVARIANCE_DEGENERATE: return "covariance degenerate";
    case FT_ERR_IO: return "I/O error";
    case FT_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case FT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ft_last_error(void) { return g_last_error.c_str(); }

// ---- configuration --------------------------------------------------------

ft_status ft_config_new_default(ft_config** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new ft_config{};
    return FT_OK;
  });
}

ft_status ft_config_load(const char* path, ft_config** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new ft_config{frictrack::parse_config(path)};
    return FT_OK;
  });
}

ft_status ft_config_parse(const char* yaml_text, ft_config** out) {
  if (!yaml_text) return null_arg("yaml_text");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new ft_config{frictrack::parse_config_text(yaml_text)};
    return FT_OK;
  });
}

ft_status ft_config_clone(const ft_config* cfg, ft_config** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new ft_config{*cfg};
    return FT_OK;
  });
}

void ft_config_free(ft_config* cfg) { delete cfg; }

ft_status ft_config_set_observer(ft_config* cfg, ft_observer observer) {
  if (!cfg) return null_arg("cfg");
  if (observer != FT_OBSERVER_IANDI && observer != FT_OBSERVER_SLIDINGMODE) {
    return fail(FT_ERR_INVALID_ARGUMENT, "unknown observer");
  }
  cfg->cfg.observer = observer == FT_OBSERVER_IANDI ? frictrack::ObserverKind::iandi
                                                    : frictrack::ObserverKind::slidingmode;
  return FT_OK;
}

ft_status ft_config_get_observer(const ft_config* cfg, ft_observer* out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = cfg->cfg.observer == frictrack::ObserverKind::iandi ? FT_OBSERVER_IANDI
                                                             : FT_OBSERVER_SLIDINGMODE;
  return FT_OK;
}

ft_status ft_config_set_seed(ft_config* cfg, uint64_t seed) {
  if (!cfg) return null_arg("cfg");
  cfg->cfg.seed = seed;
  return FT_OK;
}

ft_status ft_config_set_noise_amplitude(ft_config* cfg, double amplitude) {
  if (!cfg) return null_arg("cfg");
  if (!(amplitude >= 0.0)) return fail(FT_ERR_CONFIG, "config error in 'noise_amplitude': must be >= 0");
  cfg->cfg.noise.amplitude = amplitude;
  return FT_OK;
}

ft_status ft_config_set_k1(ft_config* cfg, double k1) {
  if (!cfg) return null_arg("cfg");
  if (!(k1 > 0.0)) return fail(FT_ERR_CONFIG, "config error in 'iandi.k1': must be > 0");
  cfg->cfg.iandi.k1 = k1;
  return FT_OK;
}

ft_status ft_config_set_step(ft_config* cfg, double step_h) {
  if (!cfg) return null_arg("cfg");
  if (!(step_h > 0.0)) return fail(FT_ERR_CONFIG, "config error in 'integrator.step': must be > 0");
  cfg->cfg.integrator.step_h = step_h;
  return FT_OK;
}

ft_status ft_config_set_duration(ft_config* cfg, double t_end) {
  if (!cfg) return null_arg("cfg");
  if (!(t_end > 0.0)) return fail(FT_ERR_CONFIG, "config error in 'duration': must be > 0");
  cfg->cfg.integrator.t_end = t_end;
  return FT_OK;
}

ft_status ft_config_to_yaml(const ft_config* cfg, char* buf, size_t cap, size_t* len) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] { return copy_text(frictrack::to_yaml(cfg->cfg), buf, cap, len); });
}

// ---- single run -----------------------------------------------------------

ft_status ft_run_scenario(const ft_config* cfg, ft_run** out) {
  if (!cfg) return null_arg("cfg");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto run = std::make_unique<ft_run>(ft_run{cfg->cfg, frictrack::run_scenario(cfg->cfg)});
    const ft_status st = failure_status(run->result);
    if (st != FT_OK) g_last_error = run->result.failure->message;
    *out = run.release();
    return st;
  });
}

void ft_run_free(ft_run* run) { delete run; }

ft_status ft_run_failure(const ft_run* run) {
  if (!run) return null_arg("run");
  return failure_status(run->result);
}

ft_status ft_run_metrics(const ft_run* run, ft_metrics* out) {
  if (!run) return null_arg("run");
  if (!out) return null_arg("out");
  *out = to_c(run->result.metrics);
  return FT_OK;
}

size_t ft_run_log_rows(const ft_run* run) { return run ? run->result.log.rows() : 0; }

size_t ft_run_log_columns(const ft_run* run) { return run ? run->result.log.columns().size() : 0; }

const char* ft_run_log_column_name(const ft_run* run, size_t i) {
  if (!run || i >= run->result.log.columns().size()) return nullptr;
  return run->result.log.columns()[i].c_str();
}

ft_status ft_run_log_column(const ft_run* run, const char* name, double* buf, size_t cap,
                            size_t* len) {
  if (!run) return null_arg("run");
  if (!name) return null_arg("name");
  if (!len) return null_arg("len");
  return guarded([&] {
    const auto col = run->result.log.column(name);
    *len = col.size();
    if (buf) std::memcpy(buf, col.data(), std::min(cap, col.size()) * sizeof(double));
    return FT_OK;
  });
}

ft_status ft_run_write_csv(const ft_run* run, const char* path) {
  if (!run) return null_arg("run");
  if (!path) return null_arg("path");
  return guarded([&] {
    frictrack::write_csv(run->result.log, path);
    return FT_OK;
  });
}

ft_status ft_run_emit_plots(const ft_run* run, const char* outdir, const char* label) {
  if (!run) return null_arg("run");
  if (!outdir) return null_arg("outdir");
  return guarded([&] {
    const std::string l = label ? label : std::string(frictrack::to_string(run->cfg.observer));
    frictrack::emit_plots(run->result.log, outdir, l, run->cfg.plant);
    return FT_OK;
  });
}

ft_status ft_compare_report(const ft_run* a, const char* label_a, const ft_run* b,
                            const char* label_b, char* buf, size_t cap, size_t* len) {
  if (!a || !b) return null_arg("run");
  return guarded([&] {
    const frictrack::LabeledMetrics la{label_a ? label_a : "a", a->result.metrics};
    const frictrack::LabeledMetrics lb{label_b ? label_b : "b", b->result.metrics};
    return copy_text(frictrack::compare_report(la, lb), buf, cap, len);
  });
}

// ---- k1 sweep -------------------------------------------------------------

ft_status ft_sweep_k1(const ft_config* base, const double* k1_values, size_t n, int noisy,
                      unsigned workers, ft_sweep** out) {
  if (!base) return null_arg("base");
  if (!k1_values && n > 0) return null_arg("k1_values");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto rows = frictrack::k1_sweep(std::span<const double>(k1_values, n), noisy != 0, base->cfg,
                                    workers);
    *out = new ft_sweep{std::move(rows)};
    return FT_OK;
  });
}

size_t ft_sweep_size(const ft_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

ft_status ft_sweep_row_get(const ft_sweep* sweep, size_t i, ft_sweep_row* out) {
  if (!sweep) return null_arg("sweep");
  if (!out) return null_arg("out");
  if (i >= sweep->rows.size()) return fail(FT_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = sweep->rows[i];
  *out = ft_sweep_row{r.k1, r.noisy ? 1 : 0, r.stable ? 1 : 0, to_c(r.metrics)};
  return FT_OK;
}

ft_status ft_sweep_write_csv(const ft_sweep* sweep, const char* path) {
  if (!sweep) return null_arg("sweep");
  if (!path) return null_arg("path");
  return guarded([&] {
    frictrack::write_sweep_csv(sweep->rows, path);
    return FT_OK;
  });
}

void ft_sweep_free(ft_sweep* sweep) { delete sweep; }

// ---- helpers --------------------------------------------------------------

ft_status ft_lyapunov_rate(double k1, double theta1, double theta2, double vartheta, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = frictrack::lyapunov_rate(k1, frictrack::PlantParams{theta1, theta2, vartheta});
    return FT_OK;
  });
}

ft_status ft_total_variation(const double* series, size_t n, double* out) {
  if (!series && n > 0) return null_arg("series");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = frictrack::total_variation(std::span<const double>(series, n));
    return FT_OK;
  });
}

}  // extern "C"
