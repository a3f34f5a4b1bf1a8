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

#include "heliopt/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "heliopt/errors.hpp"

namespace heliopt {

std::string_view algorithm_name(Algorithm a) { return a == Algorithm::kPso ? "pso" : "mpso"; }

Algorithm parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "pso") return Algorithm::kPso;
  if (lower == "mpso") return Algorithm::kMpso;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

OptimizationRun optimize(Algorithm algorithm, std::uint64_t seed,
                         const OptimizationSettings& settings) {
  SwarmConfig cfg = settings.swarm;
  cfg.mpso_enabled = algorithm == Algorithm::kMpso;
  cfg.seed = seed;
  const Scenario scenario = settings.scenario;
  const ModelParams model = settings.model;
  const Objective cost = [scenario, model](std::span<const double> x) {
    return objective(x, scenario, model);
  };

  const auto start = std::chrono::steady_clock::now();
  SwarmResult res = run(cost, cfg, settings.bounds);
  const auto stop = std::chrono::steady_clock::now();

  OptimizationRun out;
  out.algorithm = algorithm;
  out.seed = seed;
  out.final_cost = res.best_cost;
  out.wall_seconds = std::chrono::duration<double>(stop - start).count();
  out.evaluations = res.evaluations;
  out.best_position = std::move(res.best_position);
  out.trace = std::move(res.trace);
  out.bounds_adapted =
      std::any_of(res.final_swarm.particles.begin(), res.final_swarm.particles.end(),
                  [&](const Particle& p) { return !(p.bounds == settings.bounds); });
  return out;
}

std::vector<double> AlgorithmRuns::final_costs() const {
  std::vector<double> c;
  c.reserve(runs.size());
  for (const OptimizationRun& r : runs) c.push_back(r.final_cost);
  return c;
}

double AlgorithmRuns::best() const {
  const std::vector<double> c = final_costs();
  return c.empty() ? 0.0 : *std::min_element(c.begin(), c.end());
}

double AlgorithmRuns::mean() const {
  const std::vector<double> c = final_costs();
  return c.empty() ? 0.0 : std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
}

double AlgorithmRuns::median() const {
  std::vector<double> c = final_costs();
  if (c.empty()) return 0.0;
  std::sort(c.begin(), c.end());
  const std::size_t m = c.size() / 2;
  return c.size() % 2 == 1 ? c[m] : 0.5 * (c[m - 1] + c[m]);
}

double AlgorithmRuns::mean_wall_seconds() const {
  if (runs.empty()) return 0.0;
  double s = 0.0;
  for (const OptimizationRun& r : runs) s += r.wall_seconds;
  return s / static_cast<double>(runs.size());
}

const OptimizationRun& AlgorithmRuns::best_run() const {
  if (runs.empty()) throw std::out_of_range("AlgorithmRuns::best_run: no runs");
  return *std::min_element(runs.begin(), runs.end(),
                           [](const OptimizationRun& a, const OptimizationRun& b) {
                             return a.final_cost < b.final_cost;
                           });
}

const AlgorithmRuns& CampaignResult::of(Algorithm a) const {
  for (const AlgorithmRuns& r : algorithms) {
    if (r.algorithm == a) return r;
  }
  throw std::out_of_range("campaign has no runs for " + std::string(algorithm_name(a)));
}

CampaignResult run_campaign(const CampaignSettings& settings, const CampaignProgress& progress) {
  struct Job {
    std::size_t algo_index;
    std::size_t seed_index;
  };
  std::vector<Job> jobs;
  CampaignResult result;
  result.scenario = settings.optimization.scenario.label;
  for (std::size_t a = 0; a < settings.algorithms.size(); ++a) {
    result.algorithms.push_back({settings.algorithms[a], {}});
    result.algorithms.back().runs.resize(settings.seeds.size());
    for (std::size_t s = 0; s < settings.seeds.size(); ++s) jobs.push_back({a, s});
  }

  std::mutex report_mutex;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job job = jobs[j];
      OptimizationRun run = optimize(settings.algorithms[job.algo_index],
                                     settings.seeds[job.seed_index], settings.optimization);
      std::lock_guard lock(report_mutex);
      result.algorithms[job.algo_index].runs[job.seed_index] = std::move(run);
      if (progress) progress(result.algorithms[job.algo_index].runs[job.seed_index]);
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(settings.workers, 1, std::max<std::size_t>(jobs.size(), 1));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  return result;
}

}  // namespace heliopt
