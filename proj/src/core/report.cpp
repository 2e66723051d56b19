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

#include "frictrack/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>

#include "frictrack/errors.hpp"
#include "frictrack/run_log.hpp"

namespace frictrack {

namespace {

std::string cell(double v) { return std::isfinite(v) ? fmt::format("{:.6g}", v) : "n/a"; }

std::string ratio_text(const std::optional<double>& r) {
  return r ? fmt::format("{:.4g}", *r) : "n/a";
}

}  // namespace

std::optional<double> metric_ratio(double a, double b, bool a_diverged, bool b_diverged) {
  if (a_diverged || b_diverged) return std::nullopt;
  if (!std::isfinite(a) || !std::isfinite(b)) return std::nullopt;
  if (a == b) return 1.0;
  if (a == 0.0) return std::nullopt;
  return b / a;
}

std::string compare_report(const LabeledMetrics& a, const LabeledMetrics& b) {
  const Metrics& ma = a.metrics;
  const Metrics& mb = b.metrics;
  std::string out;
  const auto row = [&out](std::string_view name, const std::string& va, const std::string& vb) {
    out += fmt::format("{:<28} {:>18} {:>18}\n", name, va, vb);
  };

  row("metric", a.label, b.label);
  row("window start [s]", cell(ma.window_start), cell(mb.window_start));
  row("rms tracking error", cell(ma.rms_tracking_error), cell(mb.rms_tracking_error));
  row("max observer error", cell(ma.max_observer_error), cell(mb.max_observer_error));
  row("theta1 error (final)", cell(ma.theta_error_final[0]), cell(mb.theta_error_final[0]));
  row("theta2 error (final)", cell(ma.theta_error_final[1]), cell(mb.theta_error_final[1]));
  row("total variation of u", cell(ma.control_total_variation), cell(mb.control_total_variation));
  row("settle time [s]", ma.settle_time ? cell(*ma.settle_time) : "none",
      mb.settle_time ? cell(*mb.settle_time) : "none");
  row("diverged", ma.diverged ? fmt::format("yes (t={:.6g})", ma.diverged_at) : "no",
      mb.diverged ? fmt::format("yes (t={:.6g})", mb.diverged_at) : "no");
  out += '\n';

  if (ma.diverged) out += fmt::format("note: {} diverged, ratios suppressed\n", a.label);
  if (mb.diverged) out += fmt::format("note: {} diverged, ratios suppressed\n", b.label);

  const auto chatter = metric_ratio(ma.control_total_variation, mb.control_total_variation,
                                    ma.diverged, mb.diverged);
  const auto noise = metric_ratio(ma.max_observer_error, mb.max_observer_error, ma.diverged,
                                  mb.diverged);
  out += fmt::format("chattering ratio ({} / {}): {}\n", b.label, a.label, ratio_text(chatter));
  out += fmt::format("noise-robustness ratio ({} / {}): {}\n", b.label, a.label,
                     ratio_text(noise));
  return out;
}

void write_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << "k1,noisy,stable,rms_tracking_error,max_observer_error,tv_u,diverged_at\n";
  for (const SweepRow& r : rows) {
    const Metrics& m = r.metrics;
    out << format_value(r.k1) << ',' << (r.noisy ? 1 : 0) << ',' << (r.stable ? 1 : 0) << ','
        << format_value(m.rms_tracking_error) << ',' << format_value(m.max_observer_error) << ','
        << format_value(m.control_total_variation) << ','
        << (m.diverged ? format_value(m.diverged_at) : std::string()) << '\n';
  }
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

}  // namespace frictrack
