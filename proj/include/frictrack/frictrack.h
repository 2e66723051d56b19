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

#ifndef FRICTRACK_FRICTRACK_H
#define FRICTRACK_FRICTRACK_H

/*
 * C interface to the frictrack simulator.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an ft_status; on
 * failure ft_last_error() holds a message for the calling thread.
 *
 * Functions that produce text follow one convention: the required length
 * (without the terminating NUL) is stored in *len, and the text is copied
 * only if cap > *len. Pass buf = NULL, cap = 0 to query the size.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FRICTRACK_BUILDING)
#    define FRICTRACK_API __declspec(dllexport)
#  else
#    define FRICTRACK_API __declspec(dllimport)
#  endif
#else
#  define FRICTRACK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ft_status {
  FT_OK = 0,
  FT_ERR_INVALID_ARGUMENT = 1,
  FT_ERR_CONFIG = 2,
  FT_ERR_NUMERICAL_BLOWUP = 3,
  FT_ERR_COVARIANCE_DEGENERATE = 4,
  FT_ERR_IO = 5,
  FT_ERR_BUFFER_TOO_SMALL = 6,
  FT_ERR_INTERNAL = 7
} ft_status;

typedef enum ft_observer { FT_OBSERVER_IANDI = 0, FT_OBSERVER_SLIDINGMODE = 1 } ft_observer;

typedef struct ft_config ft_config;
typedef struct ft_run ft_run;
typedef struct ft_sweep ft_sweep;

typedef struct ft_metrics {
  double window_start;
  double rms_tracking_error;
  double max_observer_error;
  double theta1_error_final;
  double theta2_error_final;
  double control_total_variation;
  int diverged;
  double diverged_at;
  int has_settle_time;
  double settle_time;
} ft_metrics;

typedef struct ft_sweep_row {
  double k1;
  int noisy;
  int stable;
  ft_metrics metrics;
} ft_sweep_row;

FRICTRACK_API const char* ft_version(void);
FRICTRACK_API const char* ft_status_string(ft_status status);
/* Message of the last failed call on this thread; "" if none. */
FRICTRACK_API const char* ft_last_error(void);

/* ---- configuration ---------------------------------------------------- */

FRICTRACK_API ft_status ft_config_new_default(ft_config** out);
FRICTRACK_API ft_status ft_config_load(const char* path, ft_config** out);
FRICTRACK_API ft_status ft_config_parse(const char* yaml_text, ft_config** out);
FRICTRACK_API ft_status ft_config_clone(const ft_config* cfg, ft_config** out);
FRICTRACK_API void ft_config_free(ft_config* cfg);

FRICTRACK_API ft_status ft_config_set_observer(ft_config* cfg, ft_observer observer);
FRICTRACK_API ft_status ft_config_get_observer(const ft_config* cfg, ft_observer* out);
FRICTRACK_API ft_status ft_config_set_seed(ft_config* cfg, uint64_t seed);
FRICTRACK_API ft_status ft_config_set_noise_amplitude(ft_config* cfg, double amplitude);
FRICTRACK_API ft_status ft_config_set_k1(ft_config* cfg, double k1);
FRICTRACK_API ft_status ft_config_set_step(ft_config* cfg, double step_h);
FRICTRACK_API ft_status ft_config_set_duration(ft_config* cfg, double t_end);
FRICTRACK_API ft_status ft_config_to_yaml(const ft_config* cfg, char* buf, size_t cap, size_t* len);

/* ---- single run ------------------------------------------------------- */

/* Runs the scenario. On FT_ERR_NUMERICAL_BLOWUP / FT_ERR_COVARIANCE_DEGENERATE
 * *out still receives the partial run (log up to the failure, metrics with
 * diverged set); on any other error *out is NULL. */
FRICTRACK_API ft_status ft_run_scenario(const ft_config* cfg, ft_run** out);
FRICTRACK_API void ft_run_free(ft_run* run);

/* FT_OK, or the numerical failure that ended the run early. */
FRICTRACK_API ft_status ft_run_failure(const ft_run* run);
FRICTRACK_API ft_status ft_run_metrics(const ft_run* run, ft_metrics* out);
FRICTRACK_API size_t ft_run_log_rows(const ft_run* run);
FRICTRACK_API size_t ft_run_log_columns(const ft_run* run);
/* NULL if i is out of range. Valid until the run is freed. */
FRICTRACK_API const char* ft_run_log_column_name(const ft_run* run, size_t i);
/* Copies min(cap, rows) values of the named column; *len gets the row count. */
FRICTRACK_API ft_status ft_run_log_column(const ft_run* run, const char* name, double* buf,
                                          size_t cap, size_t* len);
FRICTRACK_API ft_status ft_run_write_csv(const ft_run* run, const char* path);
FRICTRACK_API ft_status ft_run_emit_plots(const ft_run* run, const char* outdir, const char* label);

FRICTRACK_API ft_status ft_compare_report(const ft_run* a, const char* label_a, const ft_run* b,
                                          const char* label_b, char* buf, size_t cap, size_t* len);

/* ---- k1 sweep --------------------------------------------------------- */

/* workers = 0 picks the hardware concurrency. Per-run failures are recorded
 * in the rows, never returned as an error. */
FRICTRACK_API ft_status ft_sweep_k1(const ft_config* base, const double* k1_values, size_t n,
                                    int noisy, unsigned workers, ft_sweep** out);
FRICTRACK_API size_t ft_sweep_size(const ft_sweep* sweep);
FRICTRACK_API ft_status ft_sweep_row_get(const ft_sweep* sweep, size_t i, ft_sweep_row* out);
FRICTRACK_API ft_status ft_sweep_write_csv(const ft_sweep* sweep, const char* path);
FRICTRACK_API void ft_sweep_free(ft_sweep* sweep);

/* ---- helpers ---------------------------------------------------------- */

FRICTRACK_API ft_status ft_lyapunov_rate(double k1, double theta1, double theta2, double vartheta,
                                         double* out);
FRICTRACK_API ft_status ft_total_variation(const double* series, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* FRICTRACK_FRICTRACK_H */
