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

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "frictrack/frictrack.h"

namespace fs = std::filesystem;

namespace {

ft_config* default_config() {
  ft_config* cfg = nullptr;
  EXPECT_EQ(ft_config_new_default(&cfg), FT_OK);
  return cfg;
}

}  // namespace

TEST(CApi, StatusStrings) {
  EXPECT_STREQ(ft_status_string(FT_OK), "ok");
  EXPECT_STREQ(ft_status_string(FT_ERR_CONFIG), "configuration error");
  EXPECT_STRNE(ft_version(), "");
}

TEST(CApi, NullArgumentsRejected) {
  EXPECT_EQ(ft_config_new_default(nullptr), FT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ft_config_set_seed(nullptr, 1), FT_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(ft_last_error()).find("cfg"), std::string::npos);
  ft_run* run = nullptr;
  EXPECT_EQ(ft_run_scenario(nullptr, &run), FT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(run, nullptr);
  EXPECT_EQ(ft_run_log_rows(nullptr), 0u);
  ft_config_free(nullptr);
  ft_run_free(nullptr);
  ft_sweep_free(nullptr);
}

TEST(CApi, ConfigParseErrorsAndYamlBuffer) {
  ft_config* cfg = nullptr;
  EXPECT_EQ(ft_config_parse("noise_amplitude: -1", &cfg), FT_ERR_CONFIG);
  EXPECT_EQ(cfg, nullptr);
  EXPECT_NE(std::string(ft_last_error()).find("noise_amplitude"), std::string::npos);
  EXPECT_EQ(ft_config_load("/nonexistent/cfg.yaml", &cfg), FT_ERR_IO);

  ASSERT_EQ(ft_config_parse("observer: slidingmode\nseed: 4", &cfg), FT_OK);
  ft_observer obs{};
  ASSERT_EQ(ft_config_get_observer(cfg, &obs), FT_OK);
  EXPECT_EQ(obs, FT_OBSERVER_SLIDINGMODE);

  size_t len = 0;
  ASSERT_EQ(ft_config_to_yaml(cfg, nullptr, 0, &len), FT_OK);
  std::vector<char> small(4);
  EXPECT_EQ(ft_config_to_yaml(cfg, small.data(), small.size(), &len), FT_ERR_BUFFER_TOO_SMALL);
  std::vector<char> buf(len + 1);
  ASSERT_EQ(ft_config_to_yaml(cfg, buf.data(), buf.size(), &len), FT_OK);
  EXPECT_EQ(std::strlen(buf.data()), len);
  EXPECT_EQ(std::string(buf.data()).rfind("observer: slidingmode\nseed: 4\n", 0), 0u);

  ft_config* again = nullptr;
  ASSERT_EQ(ft_config_parse(buf.data(), &again), FT_OK);
  ft_config_free(again);
  ft_config_free(cfg);
}

TEST(CApi, SettersValidate) {
  ft_config* cfg = default_config();
  EXPECT_EQ(ft_config_set_noise_amplitude(cfg, -1.0), FT_ERR_CONFIG);
  EXPECT_EQ(ft_config_set_k1(cfg, 0.0), FT_ERR_CONFIG);
  EXPECT_EQ(ft_config_set_step(cfg, -1e-4), FT_ERR_CONFIG);
  EXPECT_EQ(ft_config_set_duration(cfg, 0.0), FT_ERR_CONFIG);
  EXPECT_EQ(ft_config_set_observer(cfg, static_cast<ft_observer>(9)), FT_ERR_INVALID_ARGUMENT);
  ft_config_free(cfg);
}

TEST(CApi, RunMetricsColumnsAndFiles) {
  ft_config* cfg = default_config();
  ASSERT_EQ(ft_config_set_duration(cfg, 2.0), FT_OK);
  ASSERT_EQ(ft_config_set_observer(cfg, FT_OBSERVER_SLIDINGMODE), FT_OK);
  ft_run* run = nullptr;
  ASSERT_EQ(ft_run_scenario(cfg, &run), FT_OK);
  EXPECT_EQ(ft_run_failure(run), FT_OK);
  EXPECT_EQ(ft_run_log_rows(run), 2001u);
  ASSERT_EQ(ft_run_log_columns(run), 13u);
  EXPECT_STREQ(ft_run_log_column_name(run, 5), "x1_hat");
  EXPECT_EQ(ft_run_log_column_name(run, 13), nullptr);

  size_t len = 0;
  ASSERT_EQ(ft_run_log_column(run, "t", nullptr, 0, &len), FT_OK);
  std::vector<double> t(len);
  ASSERT_EQ(ft_run_log_column(run, "t", t.data(), t.size(), &len), FT_OK);
  EXPECT_DOUBLE_EQ(t.back(), 2.0);
  EXPECT_EQ(ft_run_log_column(run, "nope", t.data(), t.size(), &len), FT_ERR_INVALID_ARGUMENT);

  ft_metrics m{};
  ASSERT_EQ(ft_run_metrics(run, &m), FT_OK);
  EXPECT_EQ(m.window_start, 1.0);
  EXPECT_EQ(m.diverged, 0);

  const fs::path dir = fs::temp_directory_path() / "frictrack_capi_out";
  fs::remove_all(dir);
  ASSERT_EQ(ft_run_emit_plots(run, dir.c_str(), "sm"), FT_OK);
  ASSERT_EQ(ft_run_write_csv(run, (dir / "run.csv").c_str()), FT_OK);
  EXPECT_TRUE(fs::exists(dir / "f4_params.svg"));
  EXPECT_TRUE(fs::exists(dir / "run.csv"));
  EXPECT_EQ(ft_run_write_csv(run, "/nonexistent/run.csv"), FT_ERR_IO);
  fs::remove_all(dir);

  ASSERT_EQ(ft_compare_report(run, "x", run, "y", nullptr, 0, &len), FT_OK);
  std::vector<char> rep(len + 1);
  ASSERT_EQ(ft_compare_report(run, "x", run, "y", rep.data(), rep.size(), &len), FT_OK);
  EXPECT_NE(std::string(rep.data()).find("chattering ratio (y / x): 1"), std::string::npos);

  ft_run_free(run);
  ft_config_free(cfg);
}

TEST(CApi, NumericalFailureReturnsPartialRun) {
  ft_config* cfg = nullptr;
  ASSERT_EQ(ft_config_parse("duration: 20\ndivergence_bound: 0.9", &cfg), FT_OK);
  ft_run* run = nullptr;
  EXPECT_EQ(ft_run_scenario(cfg, &run), FT_ERR_NUMERICAL_BLOWUP);
  ASSERT_NE(run, nullptr);
  EXPECT_NE(std::string(ft_last_error()).find("numerical blowup"), std::string::npos);
  EXPECT_EQ(ft_run_failure(run), FT_ERR_NUMERICAL_BLOWUP);
  ft_metrics m{};
  ASSERT_EQ(ft_run_metrics(run, &m), FT_OK);
  EXPECT_EQ(m.diverged, 1);
  EXPECT_GT(ft_run_log_rows(run), 0u);
  ft_run_free(run);
  ft_config_free(cfg);
}

TEST(CApi, SweepRows) {
  ft_config* cfg = default_config();
  ASSERT_EQ(ft_config_set_duration(cfg, 5.0), FT_OK);
  const double k1s[] = {1.0, 10.0};
  ft_sweep* sweep = nullptr;
  ASSERT_EQ(ft_sweep_k1(cfg, k1s, 2, 1, 2, &sweep), FT_OK);
  ASSERT_EQ(ft_sweep_size(sweep), 2u);
  ft_sweep_row row{};
  ASSERT_EQ(ft_sweep_row_get(sweep, 1, &row), FT_OK);
  EXPECT_EQ(row.k1, 10.0);
  EXPECT_EQ(row.noisy, 1);
  EXPECT_EQ(ft_sweep_row_get(sweep, 2, &row), FT_ERR_INVALID_ARGUMENT);
  ft_sweep_free(sweep);

  const double bad[] = {-1.0};
  EXPECT_EQ(ft_sweep_k1(cfg, bad, 1, 0, 1, &sweep), FT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(sweep, nullptr);
  ft_config_free(cfg);
}

TEST(CApi, Helpers) {
  double v = 0.0;
  ASSERT_EQ(ft_lyapunov_rate(1.0, 0.4, 1.0, 100.0, &v), FT_OK);
  EXPECT_EQ(v, 1.014e6);
  EXPECT_EQ(ft_lyapunov_rate(0.0, 0.4, 1.0, 100.0, &v), FT_ERR_INVALID_ARGUMENT);
  const double s[] = {0.0, 1.0, 0.0, 1.0};
  ASSERT_EQ(ft_total_variation(s, 4, &v), FT_OK);
  EXPECT_EQ(v, 3.0);
  EXPECT_EQ(ft_total_variation(s, 1, &v), FT_ERR_INVALID_ARGUMENT);
}
