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

#include "frictrack/config.hpp"

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "frictrack/errors.hpp"

namespace frictrack {

namespace {

/// Mapping node that remembers which keys were read, so leftovers can be
/// reported as unknown.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ConfigError(path_.empty() ? "<root>" : path_, "expected a mapping");
    }
  }

  std::string key_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : fmt::format("{}.{}", path_, key);
  }

  bool has(std::string_view key) const {
    return node_ && node_.IsMap() && node_[std::string(key)];
  }

  YAML::Node raw(std::string_view key) {
    seen_.insert(std::string(key));
    return node_[std::string(key)];
  }

  template <class T>
  void read(std::string_view key, T& out) {
    if (!has(key)) return;
    const YAML::Node n = raw(key);
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(key_path(key), "wrong value type");
    }
  }

  void read_vec2(std::string_view key, Vec2& out) {
    if (!has(key)) return;
    const YAML::Node n = raw(key);
    if (!n.IsSequence() || n.size() != 2) throw ConfigError(key_path(key), "expected [a, b]");
    try {
      out = {n[0].as<double>(), n[1].as<double>()};
    } catch (const YAML::Exception&) {
      throw ConfigError(key_path(key), "wrong value type");
    }
  }

  Section sub(std::string_view key) {
    if (!has(key)) return Section(YAML::Node(), key_path(key));
    return Section(raw(key), key_path(key));
  }

  void reject_unknown() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.count(key)) throw ConfigError(key_path(key), "unknown key");
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class Enum>
struct EnumName {
  Enum value;
  std::string_view name;
};

constexpr EnumName<Method> kMethods[] = {{Method::euler, "euler"}, {Method::rk4, "rk4"}};
constexpr EnumName<NoiseModel> kNoiseModels[] = {{NoiseModel::multiplicative, "multiplicative"},
                                                 {NoiseModel::additive, "additive"}};
constexpr EnumName<RegressorVelocity> kRegressors[] = {{RegressorVelocity::true_state, "true_state"},
                                                       {RegressorVelocity::estimate, "estimate"}};
constexpr EnumName<InnovationSource> kInnovations[] = {{InnovationSource::measured, "measured"},
                                                       {InnovationSource::true_state, "true_state"}};
constexpr EnumName<SignMode::Kind> kSignModes[] = {{SignMode::Kind::exact, "exact"},
                                                   {SignMode::Kind::boundary_layer, "boundary_layer"}};

template <class Enum, std::size_t N>
void read_enum(Section& s, std::string_view key, const EnumName<Enum> (&table)[N], Enum& out) {
  std::string text;
  s.read(key, text);
  if (text.empty()) return;
  for (const auto& e : table) {
    if (e.name == text) {
      out = e.value;
      return;
    }
  }
  throw ConfigError(s.key_path(key), fmt::format("unknown value '{}'", text));
}

template <class Enum, std::size_t N>
std::string_view enum_name(const EnumName<Enum> (&table)[N], Enum v) {
  for (const auto& e : table) {
    if (e.value == v) return e.name;
  }
  return "?";
}

PiecewiseReference parse_reference(const YAML::Node& node) {
  if (!node.IsSequence()) throw ConfigError("reference", "expected a list of segments");
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < node.size(); ++i) {
    Section s(node[i], fmt::format("reference[{}]", i));
    std::string kind = "hold";
    Segment seg;
    s.read("t_start", seg.t_start);
    s.read("kind", kind);
    if (kind == "hold") {
      if (!s.has("value")) throw ConfigError(s.key_path("value"), "required for a hold");
      s.read("value", seg.value);
      seg = Segment::hold(seg.t_start, seg.value);
    } else if (kind == "ramp") {
      if (!s.has("from") || !s.has("to")) {
        throw ConfigError(s.key_path("from"), "ramp needs 'from' and 'to'");
      }
      double from = 0.0, to = 0.0;
      s.read("from", from);
      s.read("to", to);
      seg = Segment::ramp(seg.t_start, from, to);
    } else {
      throw ConfigError(s.key_path("kind"), fmt::format("unknown value '{}'", kind));
    }
    s.reject_unknown();
    segs.push_back(seg);
  }
  return PiecewiseReference(std::move(segs));
}

std::string fmt_double(double v) { return fmt::format("{}", v); }

}  // namespace

std::string_view to_string(ObserverKind k) {
  return k == ObserverKind::iandi ? "iandi" : "slidingmode";
}

ObserverKind observer_from_string(std::string_view s) {
  if (s == "iandi") return ObserverKind::iandi;
  if (s == "slidingmode") return ObserverKind::slidingmode;
  throw ConfigError("observer", fmt::format("unknown observer '{}'", s));
}

ScenarioConfig parse_config_text(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError("<root>", e.what());
  }

  ScenarioConfig cfg;
  Section top(root, "");

  std::string observer = "iandi";
  top.read("observer", observer);
  cfg.observer = observer_from_string(observer);
  top.read("seed", cfg.seed);
  top.read("duration", cfg.integrator.t_end);
  top.read("divergence_bound", cfg.divergence_bound);
  top.read("noise_amplitude", cfg.noise.amplitude);
  top.read("measurement_rate", cfg.noise.rate_hz);
  read_enum(top, "noise_model", kNoiseModels, cfg.noise.model);

  {
    Section s = top.sub("plant");
    s.read("theta1", cfg.plant.theta1);
    s.read("theta2", cfg.plant.theta2);
    s.read("vartheta", cfg.plant.vartheta);
    s.reject_unknown();
  }
  {
    Section s = top.sub("controller");
    s.read("alpha1", cfg.gains.alpha1);
    s.read("alpha2", cfg.gains.alpha2);
    s.reject_unknown();
  }
  {
    Section s = top.sub("initial");
    s.read("x1", cfg.initial.x1);
    s.read("x2", cfg.initial.x2);
    s.reject_unknown();
  }
  {
    Section s = top.sub("integrator");
    read_enum(s, "method", kMethods, cfg.integrator.method);
    s.read("step", cfg.integrator.step_h);
    read_enum(s, "sign_mode", kSignModes, cfg.integrator.sign_mode.kind);
    s.read("eps", cfg.integrator.sign_mode.eps);
    if (cfg.integrator.sign_mode.kind == SignMode::Kind::exact && s.has("eps")) {
      throw ConfigError("integrator.eps", "only valid with sign_mode: boundary_layer");
    }
    s.reject_unknown();
  }
  {
    Section s = top.sub("log");
    s.read("decimation", cfg.decimation);
    s.reject_unknown();
  }
  {
    Section s = top.sub("metrics");
    if (s.has("window_start")) {
      double ws = 0.0;
      s.read("window_start", ws);
      cfg.metrics.window_start = ws;
    }
    s.read("degraded_threshold", cfg.metrics.degraded_threshold);
    s.read("settle_band", cfg.metrics.settle_band);
    s.reject_unknown();
  }

  const bool is_iandi = cfg.observer == ObserverKind::iandi;
  if (!is_iandi && top.has("iandi")) {
    Section s = top.sub("iandi");
    throw ConfigError(s.has("k1") ? "iandi.k1" : "iandi",
                      "belongs to the iandi observer, but observer is slidingmode");
  }
  if (is_iandi && top.has("slidingmode")) {
    throw ConfigError("slidingmode", "belongs to the slidingmode observer, but observer is iandi");
  }
  if (is_iandi) {
    Section s = top.sub("iandi");
    s.read("k1", cfg.iandi.k1);
    s.read("x2I0", cfg.iandi.x2I0);
    s.read("theta1I0", cfg.iandi.theta1I0);
    s.read("theta2I0", cfg.iandi.theta2I0);
    s.reject_unknown();
  } else {
    Section s = top.sub("slidingmode");
    auto& sm = cfg.sm;
    s.read("c1", sm.c1);
    s.read("c2", sm.c2);
    if (s.has("gamma0")) {
      const YAML::Node g = s.raw("gamma0");
      if (!g.IsSequence() || g.size() != 2 || !g[0].IsSequence() || g[0].size() != 2 ||
          !g[1].IsSequence() || g[1].size() != 2) {
        throw ConfigError("slidingmode.gamma0", "expected [[a, b], [c, d]]");
      }
      try {
        sm.gamma0 = {g[0][0].as<double>(), g[0][1].as<double>(), g[1][0].as<double>(),
                     g[1][1].as<double>()};
      } catch (const YAML::Exception&) {
        throw ConfigError("slidingmode.gamma0", "wrong value type");
      }
    }
    s.read_vec2("theta_bar", sm.theta_bar);
    s.read("x1_hat0", sm.x1_hat0);
    s.read("x2_hat0", sm.x2_hat0);
    if (s.has("delta_theta0")) {
      Vec2 d{};
      s.read_vec2("delta_theta0", d);
      sm.delta_theta0 = d;
    }
    read_enum(s, "regressor", kRegressors, sm.regressor);
    read_enum(s, "innovation", kInnovations, sm.innovation);
    s.reject_unknown();
  }

  if (top.has("reference")) cfg.reference = parse_reference(top.raw("reference"));
  top.reject_unknown();

  try {
    validate(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("<root>", e.what());
  }
  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open config");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string to_yaml(const ScenarioConfig& cfg) {
  std::string out;
  const auto line = [&out](std::string_view s) {
    out += s;
    out += '\n';
  };
  const auto& d = fmt_double;

  line(fmt::format("observer: {}", to_string(cfg.observer)));
  line(fmt::format("seed: {}", cfg.seed));
  line(fmt::format("duration: {}", d(cfg.integrator.t_end)));
  line(fmt::format("noise_amplitude: {}", d(cfg.noise.amplitude)));
  line(fmt::format("measurement_rate: {}", d(cfg.noise.rate_hz)));
  line(fmt::format("noise_model: {}", enum_name(kNoiseModels, cfg.noise.model)));
  line(fmt::format("divergence_bound: {}", d(cfg.divergence_bound)));
  line("plant:");
  line(fmt::format("  theta1: {}", d(cfg.plant.theta1)));
  line(fmt::format("  theta2: {}", d(cfg.plant.theta2)));
  line(fmt::format("  vartheta: {}", d(cfg.plant.vartheta)));
  line("controller:");
  line(fmt::format("  alpha1: {}", d(cfg.gains.alpha1)));
  line(fmt::format("  alpha2: {}", d(cfg.gains.alpha2)));
  line("initial:");
  line(fmt::format("  x1: {}", d(cfg.initial.x1)));
  line(fmt::format("  x2: {}", d(cfg.initial.x2)));
  if (cfg.observer == ObserverKind::iandi) {
    line("iandi:");
    line(fmt::format("  k1: {}", d(cfg.iandi.k1)));
    line(fmt::format("  x2I0: {}", d(cfg.iandi.x2I0)));
    line(fmt::format("  theta1I0: {}", d(cfg.iandi.theta1I0)));
    line(fmt::format("  theta2I0: {}", d(cfg.iandi.theta2I0)));
  } else {
    const auto& sm = cfg.sm;
    line("slidingmode:");
    line(fmt::format("  c1: {}", d(sm.c1)));
    line(fmt::format("  c2: {}", d(sm.c2)));
    line(fmt::format("  gamma0: [[{}, {}], [{}, {}]]", d(sm.gamma0[0]), d(sm.gamma0[1]),
                     d(sm.gamma0[2]), d(sm.gamma0[3])));
    line(fmt::format("  theta_bar: [{}, {}]", d(sm.theta_bar[0]), d(sm.theta_bar[1])));
    line(fmt::format("  x1_hat0: {}", d(sm.x1_hat0)));
    line(fmt::format("  x2_hat0: {}", d(sm.x2_hat0)));
    if (sm.delta_theta0) {
      line(fmt::format("  delta_theta0: [{}, {}]", d((*sm.delta_theta0)[0]),
                       d((*sm.delta_theta0)[1])));
    }
    line(fmt::format("  regressor: {}", enum_name(kRegressors, sm.regressor)));
    line(fmt::format("  innovation: {}", enum_name(kInnovations, sm.innovation)));
  }
  line("integrator:");
  line(fmt::format("  method: {}", enum_name(kMethods, cfg.integrator.method)));
  line(fmt::format("  step: {}", d(cfg.integrator.step_h)));
  line(fmt::format("  sign_mode: {}", enum_name(kSignModes, cfg.integrator.sign_mode.kind)));
  if (cfg.integrator.sign_mode.kind == SignMode::Kind::boundary_layer) {
    line(fmt::format("  eps: {}", d(cfg.integrator.sign_mode.eps)));
  }
  line("log:");
  line(fmt::format("  decimation: {}", cfg.decimation));
  line("metrics:");
  if (cfg.metrics.window_start) {
    line(fmt::format("  window_start: {}", d(*cfg.metrics.window_start)));
  }
  line(fmt::format("  degraded_threshold: {}", d(cfg.metrics.degraded_threshold)));
  line(fmt::format("  settle_band: {}", d(cfg.metrics.settle_band)));
  line("reference:");
  for (const Segment& s : cfg.reference.segments()) {
    if (s.kind == Segment::Kind::hold) {
      line(fmt::format("  - {{t_start: {}, kind: hold, value: {}}}", d(s.t_start), d(s.value)));
    } else {
      line(fmt::format("  - {{t_start: {}, kind: ramp, from: {}, to: {}}}", d(s.t_start),
                       d(s.value), d(s.value_to)));
    }
  }
  return out;
}

}  // namespace frictrack
