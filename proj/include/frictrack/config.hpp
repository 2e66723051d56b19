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

#include <filesystem>
#include <string>
#include <string_view>

#include "frictrack/scenario.hpp"

namespace frictrack {

/// Parses a YAML scenario description. Omitted keys keep their defaults,
/// unknown keys are rejected, and the section of the inactive observer must
/// be absent. Throws ConfigError naming the offending key path.
ScenarioConfig parse_config_text(std::string_view text);

/// parse_config_text on the contents of `path`; IoError if unreadable.
ScenarioConfig parse_config(const std::filesystem::path& path);

/// Emits every field of `cfg` (only the active observer's section) so that
/// parse_config_text(to_yaml(cfg)) == cfg.
std::string to_yaml(const ScenarioConfig& cfg);

std::string_view to_string(ObserverKind k);
ObserverKind observer_from_string(std::string_view s);  // throws ConfigError("observer")

}  // namespace frictrack
