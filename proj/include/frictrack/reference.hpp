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

#include <vector>

namespace frictrack {

struct ReferenceSample {
  double r = 0.0;
  double rdot = 0.0;
  double rddot = 0.0;

  bool operator==(const ReferenceSample&) const = default;
};

/// One piece of a piecewise reference, active from `t_start` until the next
/// segment begins. A ramp runs linearly from `value` to `value_to`, reaching
/// `value_to` at the next segment's start; holds ignore `value_to`.
struct Segment {
  enum class Kind { hold, ramp };
  double t_start = 0.0;
  Kind kind = Kind::hold;
  double value = 0.0;
  double value_to = 0.0;

  static Segment hold(double t_start, double value) { return {t_start, Kind::hold, value, value}; }
  static Segment ramp(double t_start, double from, double to) {
    return {t_start, Kind::ramp, from, to};
  }

  bool operator==(const Segment&) const = default;
};

/// Right-continuous piecewise constant/linear reference covering [0, inf).
class PiecewiseReference {
 public:
  /// Validates: first segment starts at 0, starts strictly increasing,
  /// last segment is a hold. Throws ConfigError("reference...") otherwise.
  explicit PiecewiseReference(std::vector<Segment> segments);

  /// 1 on [0,50), 1.5 on [50,90), ramp to 0.5 on [90,110), 0.5 afterwards.
  static PiecewiseReference standard_profile();

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::vector<double> breakpoints() const;
  double min_value() const;
  double max_value() const;

  bool operator==(const PiecewiseReference&) const = default;

 private:
  std::vector<Segment> segments_;
};

/// Piecewise-classical derivatives; at a breakpoint the right-hand segment wins,
/// so jump instants report rdot = rddot = 0.
ReferenceSample reference_eval(const PiecewiseReference& ref, double t);

}  // namespace frictrack
