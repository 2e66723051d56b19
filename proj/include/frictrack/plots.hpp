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
#include <vector>

#include "frictrack/plant.hpp"
#include "frictrack/run_log.hpp"

namespace frictrack {

/// Renders the four two-panel figures of a run as standalone SVG files:
/// f1_tracking, f2_observer, f3_control, f4_params. Parameter errors are taken
/// against `truth`. Logs with an x1_hat column get an estimate overlay in f1.
/// An empty log throws InvalidInput before anything is written.
std::vector<std::filesystem::path> emit_plots(const RunLog& log,
                                              const std::filesystem::path& outdir,
                                              const std::string& label,
                                              const PlantParams& truth = {});

}  // namespace frictrack
