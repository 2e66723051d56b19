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

#include "frictrack/plots.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "frictrack/errors.hpp"

namespace frictrack {

namespace {

struct Series {
  std::string name;
  std::vector<double> y;
  std::string color;
};

struct Panel {
  std::string title;
  std::string ylabel;
  std::vector<Series> series;
};

constexpr double kWidth = 820.0;
constexpr double kPanelHeight = 300.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 45.0;
constexpr std::size_t kMaxBuckets = 1500;

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Step of 1, 2 or 5 times a power of ten giving roughly `target` ticks.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0) * mag;
}

/// Indices to draw: all of them for short series, otherwise the min and max of
/// each bucket in time order so chattering envelopes survive.
std::vector<std::size_t> pick_indices(const std::vector<double>& y) {
  std::vector<std::size_t> idx;
  const std::size_t n = y.size();
  if (n <= 2 * kMaxBuckets) {
    idx.resize(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
  }
  for (std::size_t b = 0; b < kMaxBuckets; ++b) {
    const std::size_t lo = b * n / kMaxBuckets;
    const std::size_t hi = (b + 1) * n / kMaxBuckets;
    std::size_t imin = lo, imax = lo;
    for (std::size_t i = lo; i < hi; ++i) {
      if (y[i] < y[imin]) imin = i;
      if (y[i] > y[imax]) imax = i;
    }
    idx.push_back(std::min(imin, imax));
    if (imin != imax) idx.push_back(std::max(imin, imax));
  }
  return idx;
}

void draw_panel(std::string& svg, const Panel& p, std::span<const double> t, double y0) {
  const double w = kWidth - kLeft - kRight;
  const double h = kPanelHeight - kTop - kBottom;
  const double top = y0 + kTop;

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : p.series) {
    for (const double v : s.y) {
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    lo -= 0.5 * std::max(1e-12, std::abs(lo));
    hi += 0.5 * std::max(1e-12, std::abs(hi));
    if (hi <= lo) {
      lo -= 1.0;
      hi += 1.0;
    }
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double t0 = t.front();
  const double t1 = t.back() > t0 ? t.back() : t0 + 1.0;

  const auto sx = [&](double tv) { return kLeft + (tv - t0) / (t1 - t0) * w; };
  const auto sy = [&](double v) { return top + (hi - v) / (hi - lo) * h; };

  svg += fmt::format(R"(<text x="{}" y="{}" font-size="15" font-weight="bold">{}</text>)" "\n",
                     kLeft, y0 + 30, escape(p.title));
  svg += fmt::format(
      R"(<rect x="{}" y="{}" width="{}" height="{}" fill="white" stroke="#333" stroke-width="1"/>)"
      "\n",
      kLeft, top, w, h);

  const double ystep = nice_step(hi - lo, 5);
  for (double v = std::ceil(lo / ystep) * ystep; v <= hi; v += ystep) {
    const double yy = sy(v);
    svg += fmt::format(R"(<line x1="{}" y1="{:.2f}" x2="{}" y2="{:.2f}" stroke="#ddd"/>)" "\n",
                       kLeft, yy, kLeft + w, yy);
    svg += fmt::format(
        R"(<text x="{}" y="{:.2f}" font-size="11" text-anchor="end">{:.4g}</text>)" "\n",
        kLeft - 6, yy + 4, std::abs(v) < ystep * 1e-9 ? 0.0 : v);
  }
  const double tstep = nice_step(t1 - t0, 8);
  for (double v = std::ceil(t0 / tstep) * tstep; v <= t1; v += tstep) {
    const double xx = sx(v);
    svg += fmt::format(R"(<line x1="{:.2f}" y1="{}" x2="{:.2f}" y2="{}" stroke="#ddd"/>)" "\n",
                       xx, top, xx, top + h);
    svg += fmt::format(
        R"(<text x="{:.2f}" y="{}" font-size="11" text-anchor="middle">{:.4g}</text>)" "\n", xx,
        top + h + 16, v);
  }
  svg += fmt::format(R"(<text x="{}" y="{}" font-size="12" text-anchor="middle">t [s]</text>)"
                     "\n",
                     kLeft + w / 2, top + h + 34);
  svg += fmt::format(
      R"svg(<text x="{}" y="{}" font-size="12" text-anchor="middle" transform="rotate(-90 {} {})">{}</text>)svg"
      "\n",
      20, top + h / 2, 20, top + h / 2, escape(p.ylabel));

  for (std::size_t si = 0; si < p.series.size(); ++si) {
    const Series& s = p.series[si];
    std::string pts;
    for (const std::size_t i : pick_indices(s.y)) {
      if (!std::isfinite(s.y[i])) continue;
      pts += fmt::format("{:.2f},{:.2f} ", sx(t[i]), sy(s.y[i]));
    }
    svg += fmt::format(
        R"(<polyline fill="none" stroke="{}" stroke-width="1.2" points="{}"/>)" "\n", s.color, pts);
    const double ly = top + 14 + 16 * static_cast<double>(si);
    const double lx = kLeft + w - 150;
    svg += fmt::format(R"(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="2"/>)"
                       "\n",
                       lx, ly - 4, lx + 22, ly - 4, s.color);
    svg += fmt::format(R"(<text x="{}" y="{}" font-size="12">{}</text>)" "\n", lx + 28, ly,
                       escape(s.name));
  }
}

void write_figure(const std::filesystem::path& path, const std::string& title,
                  std::span<const double> t, const Panel& a, const Panel& b) {
  const double height = 2 * kPanelHeight + 40;
  std::string svg = fmt::format(
      R"(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif">)"
      "\n",
      kWidth, height, kWidth, height);
  svg += fmt::format(R"(<rect width="100%" height="100%" fill="white"/>)" "\n");
  svg += fmt::format(R"(<text x="{}" y="24" font-size="16" text-anchor="middle">{}</text>)" "\n",
                     kWidth / 2, escape(title));
  draw_panel(svg, a, t, 30);
  draw_panel(svg, b, t, 30 + kPanelHeight);
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << svg;
  if (!out) throw IoError(path.string(), "write failed");
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

std::vector<double> diff(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::vector<double> shifted(std::span<const double> a, double c) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - c;
  return out;
}

}  // namespace

std::vector<std::filesystem::path> emit_plots(const RunLog& log,
                                              const std::filesystem::path& outdir,
                                              const std::string& label,
                                              const PlantParams& truth) {
  if (log.empty()) throw InvalidInput("cannot plot an empty log");
  for (const char* c : {"t", "r", "x1", "x2", "x2_hat", "theta1_hat", "theta2_hat", "u", "u_star"}) {
    if (!log.has_column(c)) throw InvalidInput(fmt::format("log has no '{}' column", c));
  }
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw IoError(outdir.string(), ec.message());

  const auto t = log.column("t");
  const auto x1 = log.column("x1");
  const auto x2 = log.column("x2");
  const auto x2h = log.column("x2_hat");
  const auto u = log.column("u");

  Panel f1a{"(a) reference r and position x1", "position", {}};
  f1a.series.push_back({"r", to_vec(log.column("r")), "#d62728"});
  f1a.series.push_back({"x1", to_vec(x1), "#1f77b4"});
  if (log.has_column("x1_hat")) f1a.series.push_back({"x1_hat", to_vec(log.column("x1_hat")), "#2ca02c"});
  const Panel f1b{"(b) tracking error x1 - r", "x1 - r", {{"x1 - r", diff(x1, log.column("r")), "#1f77b4"}}};

  const Panel f2a{"(a) velocity x2 and estimate x2_hat", "velocity",
                  {{"x2", to_vec(x2), "#1f77b4"}, {"x2_hat", to_vec(x2h), "#2ca02c"}}};
  const Panel f2b{"(b) observer error x2_hat - x2", "x2_hat - x2", {{"x2_hat - x2", diff(x2h, x2), "#1f77b4"}}};

  const Panel f3a{"(a) control u", "u", {{"u", to_vec(u), "#1f77b4"}}};
  const Panel f3b{"(b) deviation from ideal law u - u*", "u - u*",
                  {{"u - u*", diff(u, log.column("u_star")), "#1f77b4"}}};

  const Panel f4a{"(a) parameter error theta1_hat - theta1", "theta1 error",
                  {{"theta1 error", shifted(log.column("theta1_hat"), truth.theta1), "#1f77b4"}}};
  const Panel f4b{"(b) parameter error theta2_hat - theta2", "theta2 error",
                  {{"theta2 error", shifted(log.column("theta2_hat"), truth.theta2), "#1f77b4"}}};

  const std::vector<std::filesystem::path> files{outdir / "f1_tracking.svg", outdir / "f2_observer.svg",
                                                 outdir / "f3_control.svg", outdir / "f4_params.svg"};
  write_figure(files[0], label + ": position tracking", t, f1a, f1b);
  write_figure(files[1], label + ": velocity observation", t, f2a, f2b);
  write_figure(files[2], label + ": control signal", t, f3a, f3b);
  write_figure(files[3], label + ": parameter estimation errors", t, f4a, f4b);
  return files;
}

}  // namespace frictrack
