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

// Multi-seed optimizer campaigns on the helicopter tuning objective.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "heliopt/experiments.hpp"
#include "heliopt/swarm.hpp"

namespace heliopt {

enum class Algorithm { kPso, kMpso };

std::string_view algorithm_name(Algorithm a);
/// "pso" or "mpso" (case-insensitive); throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct OptimizationRun {
  Algorithm algorithm = Algorithm::kMpso;
  std::uint64_t seed = 0;
  double final_cost = 0.0;
  double wall_seconds = 0.0;
  std::size_t evaluations = 0;
  std::vector<double> best_position;
  std::vector<IterationStats> trace;
  bool bounds_adapted = false;  ///< some particle's box left the initial box
};

struct OptimizationSettings {
  SwarmConfig swarm;  ///< mpso_enabled and seed are overridden per run
  Bounds bounds = default_parameter_bounds();
  Scenario scenario = Scenario::nominal();
  ModelParams model;
};

/// One seeded optimizer run on the RMSE objective of settings.scenario.
OptimizationRun optimize(Algorithm algorithm, std::uint64_t seed,
                         const OptimizationSettings& settings);

struct AlgorithmRuns {
  Algorithm algorithm = Algorithm::kMpso;
  std::vector<OptimizationRun> runs;  ///< in seed order

  std::vector<double> final_costs() const;
  double best() const;
  double mean() const;
  double median() const;
  double mean_wall_seconds() const;
  const OptimizationRun& best_run() const;
};

struct CampaignResult {
  std::string scenario;
  std::vector<AlgorithmRuns> algorithms;

  /// Throws std::out_of_range if the algorithm was not part of the campaign.
  const AlgorithmRuns& of(Algorithm a) const;
};

struct CampaignSettings {
  std::vector<Algorithm> algorithms{Algorithm::kMpso, Algorithm::kPso};
  std::vector<std::uint64_t> seeds;
  OptimizationSettings optimization;
  std::size_t workers = 1;  ///< optimizer runs executed concurrently
};

using CampaignProgress = std::function<void(const OptimizationRun&)>;

/// Runs every algorithm once per seed. Runs execute on a worker pool; results
/// are stored in (algorithm, seed) order and the progress callback is invoked
/// from a single thread.
CampaignResult run_campaign(const CampaignSettings& settings,
                            const CampaignProgress& progress = {});

}  // namespace heliopt
