// Copyright 2026 The heliopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// INI configuration for the workbench tools.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "heliopt/dynamics.hpp"
#include "heliopt/experiments.hpp"
#include "heliopt/pid.hpp"
#include "heliopt/swarm.hpp"

namespace heliopt {

struct WorkbenchConfig {
  ModelParams model;
  Scenario scenario = Scenario::nominal();
  SwarmConfig swarm;
  Bounds bounds = default_parameter_bounds();
  PidControllerGains pid;
  FuzzyParameters controller = published_mpso_parameters();
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::size_t workers = 1;
};

/// Parses INI text. Sections: [model], [scenario], [swarm], [bounds], [pid],
/// [controller], [campaign]. Missing keys keep their defaults; unknown
/// sections or keys and malformed values throw ConfigError, as does a result
/// that fails validation.
WorkbenchConfig parse_config(std::string_view ini_text);
WorkbenchConfig load_config(const std::filesystem::path& path);

/// Canonical INI rendering. parse_config(render_config(c)) reproduces c.
std::string render_config(const WorkbenchConfig& config);

std::string_view mass_model_name(MassModel m);

}  // namespace heliopt
