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

// Command-line front end. Talks to the simulator only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frictrack/frictrack.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigDeleter {
  void operator()(ft_config* c) const { ft_config_free(c); }
};
struct RunDeleter {
  void operator()(ft_run* r) const { ft_run_free(r); }
};
struct SweepDeleter {
  void operator()(ft_sweep* s) const { ft_sweep_free(s); }
};
using ConfigPtr = std::unique_ptr<ft_config, ConfigDeleter>;
using RunPtr = std::unique_ptr<ft_run, RunDeleter>;
using SweepPtr = std::unique_ptr<ft_sweep, SweepDeleter>;

/// Thrown to unwind to main with an exit code after printing a message.
struct Exit {
  int code;
};

int exit_code_for(ft_status st) {
  switch (st) {
    case FT_OK: return kExitOk;
    case FT_ERR_CONFIG: return kExitConfig;
    case FT_ERR_NUMERICAL_BLOWUP:
    case FT_ERR_COVARIANCE_DEGENERATE: return kExitNumerical;
    default: return kExitFailure;
  }
}

void check(ft_status st) {
  if (st == FT_OK) return;
  std::fprintf(stderr, "error: %s\n", ft_last_error());
  throw Exit{exit_code_for(st)};
}

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise;
  std::string observer;
  std::optional<double> k1;
  std::optional<double> step;
  std::optional<double> duration;
  std::string out = "out";
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "YAML scenario file (built-in defaults when omitted)");
  cmd->add_option("--seed", o.seed, "noise seed");
  cmd->add_option("--noise", o.noise, "noise amplitude (0 = noise-free, nominal: 3e-4)");
  cmd->add_option("--observer", o.observer, "iandi | slidingmode")
      ->check(CLI::IsMember({"iandi", "slidingmode"}));
  cmd->add_option("--k1", o.k1, "I&I gain k1");
  cmd->add_option("--step", o.step, "integration step [s]");
  cmd->add_option("--duration", o.duration, "simulated time [s]");
  cmd->add_option("--out", o.out, "output directory");
}

ConfigPtr load_config(const CommonOptions& o) {
  ft_config* raw = nullptr;
  check(o.config.empty() ? ft_config_new_default(&raw) : ft_config_load(o.config.c_str(), &raw));
  ConfigPtr cfg(raw);
  if (!o.observer.empty()) {
    check(ft_config_set_observer(cfg.get(), o.observer == "iandi" ? FT_OBSERVER_IANDI
                                                                  : FT_OBSERVER_SLIDINGMODE));
  }
  if (o.seed) check(ft_config_set_seed(cfg.get(), *o.seed));
  if (o.noise) check(ft_config_set_noise_amplitude(cfg.get(), *o.noise));
  if (o.k1) check(ft_config_set_k1(cfg.get(), *o.k1));
  if (o.step) check(ft_config_set_step(cfg.get(), *o.step));
  if (o.duration) check(ft_config_set_duration(cfg.get(), *o.duration));
  return cfg;
}

std::string config_yaml(const ft_config* cfg) {
  size_t len = 0;
  check(ft_config_to_yaml(cfg, nullptr, 0, &len));
  std::string text(len + 1, '\0');
  check(ft_config_to_yaml(cfg, text.data(), text.size(), &len));
  text.resize(len);
  return text;
}

void make_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create %s: %s\n", dir.c_str(), ec.message().c_str());
    throw Exit{kExitFailure};
  }
}

void print_metrics(const char* label, const ft_metrics& m) {
  std::printf("%s\n", label);
  std::printf("  window start          %.6g s\n", m.window_start);
  std::printf("  rms tracking error    %.6g\n", m.rms_tracking_error);
  std::printf("  max observer error    %.6g\n", m.max_observer_error);
  std::printf("  theta error (final)   %.6g, %.6g\n", m.theta1_error_final, m.theta2_error_final);
  std::printf("  total variation of u  %.6g\n", m.control_total_variation);
  if (m.has_settle_time) {
    std::printf("  settle time           %.6g s\n", m.settle_time);
  } else {
    std::printf("  settle time           none\n");
  }
  if (m.diverged) std::printf("  DIVERGED at t = %.6g s\n", m.diverged_at);
}

/// Runs, writes CSV and figures under `dir`, returns the run and its status.
std::pair<RunPtr, ft_status> run_and_write(const ft_config* cfg, const std::string& dir,
                                           const std::string& label, bool plots) {
  ft_run* raw = nullptr;
  const ft_status st = ft_run_scenario(cfg, &raw);
  if (!raw) check(st);
  RunPtr run(raw);
  if (st != FT_OK) std::fprintf(stderr, "warning: %s: %s\n", label.c_str(), ft_last_error());

  make_dir(dir);
  check(ft_run_write_csv(run.get(), (std::filesystem::path(dir) / "run.csv").c_str()));
  if (plots && ft_run_log_rows(run.get()) > 0) {
    check(ft_run_emit_plots(run.get(), dir.c_str(), label.c_str()));
  }
  std::ofstream(std::filesystem::path(dir) / "config.yaml") << config_yaml(cfg);
  return {std::move(run), st};
}

int cmd_defaults(const std::string& observer) {
  ft_config* raw = nullptr;
  check(ft_config_new_default(&raw));
  ConfigPtr cfg(raw);
  if (observer == "slidingmode") check(ft_config_set_observer(cfg.get(), FT_OBSERVER_SLIDINGMODE));
  std::fputs(config_yaml(cfg.get()).c_str(), stdout);
  return kExitOk;
}

int cmd_run(const CommonOptions& o, bool plots) {
  const ConfigPtr cfg = load_config(o);
  ft_observer kind{};
  check(ft_config_get_observer(cfg.get(), &kind));
  const std::string label = kind == FT_OBSERVER_IANDI ? "I&I" : "sliding mode";
  auto [run, st] = run_and_write(cfg.get(), o.out, label, plots);
  ft_metrics m{};
  check(ft_run_metrics(run.get(), &m));
  print_metrics(label.c_str(), m);
  std::printf("outputs written to %s\n", o.out.c_str());
  return exit_code_for(st);
}

int cmd_compare(const CommonOptions& o, const std::string& against, bool plots) {
  const ConfigPtr a = load_config(o);
  ConfigPtr b;
  if (against.empty()) {
    ft_config* raw = nullptr;
    check(ft_config_clone(a.get(), &raw));
    b.reset(raw);
    ft_observer kind{};
    check(ft_config_get_observer(a.get(), &kind));
    check(ft_config_set_observer(b.get(), kind == FT_OBSERVER_IANDI ? FT_OBSERVER_SLIDINGMODE
                                                                    : FT_OBSERVER_IANDI));
  } else {
    CommonOptions ob = o;
    ob.config = against;
    ob.observer.clear();
    b = load_config(ob);
  }

  const auto label_of = [](const ft_config* c) {
    ft_observer k{};
    check(ft_config_get_observer(c, &k));
    return std::string(k == FT_OBSERVER_IANDI ? "iandi" : "slidingmode");
  };
  std::string la = label_of(a.get());
  std::string lb = label_of(b.get());
  if (la == lb) {
    la += "_a";
    lb += "_b";
  }

  auto [ra, sa] = run_and_write(a.get(), (std::filesystem::path(o.out) / la).string(), la, plots);
  auto [rb, sb] = run_and_write(b.get(), (std::filesystem::path(o.out) / lb).string(), lb, plots);

  size_t len = 0;
  check(ft_compare_report(ra.get(), la.c_str(), rb.get(), lb.c_str(), nullptr, 0, &len));
  std::string report(len + 1, '\0');
  check(ft_compare_report(ra.get(), la.c_str(), rb.get(), lb.c_str(), report.data(),
                          report.size(), &len));
  report.resize(len);
  std::fputs(report.c_str(), stdout);
  std::ofstream(std::filesystem::path(o.out) / "report.txt") << report;
  return sa != FT_OK ? exit_code_for(sa) : exit_code_for(sb);
}

int cmd_sweep(const CommonOptions& o, const std::vector<double>& k1s, bool noisy,
              unsigned workers) {
  const ConfigPtr cfg = load_config(o);
  ft_sweep* raw = nullptr;
  check(ft_sweep_k1(cfg.get(), k1s.data(), k1s.size(), noisy ? 1 : 0, workers, &raw));
  SweepPtr sweep(raw);

  make_dir(o.out);
  const auto path = (std::filesystem::path(o.out) / "sweep.csv").string();
  check(ft_sweep_write_csv(sweep.get(), path.c_str()));

  std::printf("%10s %8s %14s %14s %14s\n", "k1", "verdict", "rms_track", "max_obs_err", "tv_u");
  for (size_t i = 0; i < ft_sweep_size(sweep.get()); ++i) {
    ft_sweep_row row{};
    check(ft_sweep_row_get(sweep.get(), i, &row));
    std::printf("%10.4g %8s %14.6g %14.6g %14.6g%s\n", row.k1, row.stable ? "stable" : "degraded",
                row.metrics.rms_tracking_error, row.metrics.max_observer_error,
                row.metrics.control_total_variation, row.metrics.diverged ? "  (diverged)" : "");
  }
  std::printf("sweep table written to %s\n", path.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frictrack: adaptive observer-based tracking of a friction plant"};
  app.require_subcommand(1);

  std::string defaults_observer = "iandi";
  auto* defaults = app.add_subcommand("defaults", "print the default scenario config");
  defaults->add_option("--observer", defaults_observer, "iandi | slidingmode")
      ->check(CLI::IsMember({"iandi", "slidingmode"}));

  CommonOptions run_opts;
  bool run_no_plots = false;
  auto* run = app.add_subcommand("run", "simulate one scenario");
  add_common(run, run_opts);
  run->add_flag("--no-plots", run_no_plots, "skip SVG figures");

  CommonOptions cmp_opts;
  std::string against;
  bool cmp_no_plots = false;
  auto* compare = app.add_subcommand(
      "compare", "run two scenarios with a shared seed (default: both observers) and report");
  add_common(compare, cmp_opts);
  compare->add_option("--against", against, "config for the second scenario");
  compare->add_flag("--no-plots", cmp_no_plots, "skip SVG figures");

  CommonOptions sweep_opts;
  std::vector<double> k1s{1, 44, 88, 150};
  bool noisy = false;
  unsigned workers = 0;
  auto* sweep = app.add_subcommand("sweep", "I&I k1 sweep with stable/degraded verdicts");
  add_common(sweep, sweep_opts);
  sweep->add_option("--k1-values", k1s, "k1 grid")->delimiter(',');
  sweep->add_flag("--noisy", noisy, "use measurement noise (nominal level unless --noise)");
  sweep->add_option("--workers", workers, "parallel runs (0 = hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*defaults) return cmd_defaults(defaults_observer);
    if (*run) return cmd_run(run_opts, !run_no_plots);
    if (*compare) return cmd_compare(cmp_opts, against, !cmp_no_plots);
    if (*sweep) return cmd_sweep(sweep_opts, k1s, noisy, workers);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitFailure;
}
