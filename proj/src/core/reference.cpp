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

#include "frictrack/reference.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <utility>

#include "frictrack/errors.hpp"

namespace frictrack {

PiecewiseReference::PiecewiseReference(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw ConfigError("reference", "needs at least one segment");
  if (segments_.front().t_start != 0.0) {
    throw ConfigError("reference[0].t_start", "first segment must start at 0");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const Segment& s = segments_[i];
    if (!std::isfinite(s.t_start) || !std::isfinite(s.value) || !std::isfinite(s.value_to)) {
      throw ConfigError(fmt::format("reference[{}]", i), "non-finite value");
    }
    if (i > 0 && !(s.t_start > segments_[i - 1].t_start)) {
      throw ConfigError(fmt::format("reference[{}].t_start", i), "breakpoints must increase");
    }
  }
  if (segments_.back().kind != Segment::Kind::hold) {
    throw ConfigError(fmt::format("reference[{}].kind", segments_.size() - 1),
                      "last segment must be a hold");
  }
}

PiecewiseReference PiecewiseReference::standard_profile() {
  return PiecewiseReference({Segment::hold(0.0, 1.0), Segment::hold(50.0, 1.5),
                             Segment::ramp(90.0, 1.5, 0.5), Segment::hold(110.0, 0.5)});
}

std::vector<double> PiecewiseReference::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments_.size(); ++i) out.push_back(segments_[i].t_start);
  return out;
}

double PiecewiseReference::min_value() const {
  double m = segments_.front().value;
  for (const auto& s : segments_) m = std::min({m, s.value, s.value_to});
  return m;
}

double PiecewiseReference::max_value() const {
  double m = segments_.front().value;
  for (const auto& s : segments_) m = std::max({m, s.value, s.value_to});
  return m;
}

ReferenceSample reference_eval(const PiecewiseReference& ref, double t) {
  const auto& segs = ref.segments();
  const auto it = std::upper_bound(segs.begin(), segs.end(), t,
                                   [](double tv, const Segment& s) { return tv < s.t_start; });
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - segs.begin() - 1, 0));
  const Segment& s = segs[idx];
  if (s.kind == Segment::Kind::hold) return {s.value, 0.0, 0.0};

  const double t_next = segs[idx + 1].t_start;
  const double duration = t_next - s.t_start;
  const double slope = (s.value_to - s.value) / duration;
  return {s.value + (s.value_to - s.value) * (t - s.t_start) / duration, slope, 0.0};
}

}  // namespace frictrack
