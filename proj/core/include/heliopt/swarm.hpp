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

// Particle swarm optimization: the standard inertia-weight PSO and MPSO, a
// variant that adapts a private search box per particle and periodically
// replaces the worst particles with fresh samples from their boxes.
//
// Random draws are consumed in a fixed order so that a run is reproducible
// from its seed:
//   init:    per particle, D position draws then D velocity draws
//   update:  per particle, per dimension, r1 then r2
//   replace: per replaced particle (worst first), D positions then D velocities
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace heliopt {

/// 64-bit SplitMix generator with a portable [0, 1) mapping. std::
/// distributions are implementation-defined, which would make traces differ
/// between standard libraries.
class SwarmRng {
 public:
  explicit SwarmRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const { return lower.size(); }
  /// Throws ParameterError on size mismatch, non-finite entries or lower > upper.
  void validate() const;
  bool contains(std::span<const double> x) const;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  double cost = 0.0;
  double best_cost = 0.0;
  Bounds bounds;  ///< private search box; equals the global box in plain PSO

  /// Records the current cost and refreshes the personal best if it improved.
  void record_cost(double c);
};

struct SwarmConfig {
  std::size_t population = 30;
  std::size_t iterations = 500;
  double w0 = 1.0;
  double w_decay = 0.98;
  double c1 = 2.0;
  double c2 = 2.0;
  std::uint64_t seed = 1;
  bool mpso_enabled = true;
  double elim_percent = 75.0;        ///< e_t, share of the population replaced
  std::size_t elim_period = 40;      ///< e_p, iterations between elimination phases
  double saturation_percent = 90.0;  ///< sets the bound adjustment unit
  std::size_t threads = 1;           ///< objective evaluations in flight per batch

  /// Throws ParameterError on an invalid combination.
  void validate() const;
};

using Objective = std::function<double(std::span<const double>)>;

struct Swarm {
  std::vector<Particle> particles;
  std::vector<double> global_best_position;
  double global_best_cost = 0.0;
  Bounds initial_bounds;

  /// Rescans the particles' personal bests; never worsens the global best.
  void refresh_global_best();
  double mean_cost() const;
};

/// Source of the r1/r2 draws inside update_particle.
using UniformSource = std::function<double()>;

/// Positions uniform in the box, velocities uniform in +-(upper - lower)/2.
/// Costs are left at +inf; call evaluate() afterwards.
Swarm init_swarm(const Bounds& bounds, const SwarmConfig& cfg, SwarmRng& rng);

/// Scores every particle listed in `which` (all when empty), in parallel when
/// cfg.threads > 1. Results land in index order regardless of scheduling.
void evaluate(Swarm& swarm, const Objective& objective, const SwarmConfig& cfg,
              std::span<const std::size_t> which = {});

/// v <- w v + c1 r1 (p_best - x) + c2 r2 (g_best - x); x <- x + v; then each
/// coordinate outside the particle's box is clamped and its velocity zeroed.
void update_particle(Particle& p, std::span<const double> global_best, double inertia,
                     const SwarmConfig& cfg, const UniformSource& uniform);

/// w0 * w_decay^iter
double inertia_at(std::size_t iter, const SwarmConfig& cfg);

/// One adjustment step of the particle's box. unit = (1 - saturation/100) *
/// initial half-width of the dimension. A coordinate at or beyond the upper
/// bound pushes it up by one unit, a coordinate below it pulls it down; the
/// lower bound mirrors this. A shrinking bound never crosses the coordinate,
/// so the box keeps containing the particle.
void adapt_bounds(Particle& p, const Bounds& initial_bounds, double saturation_percent);

/// Number of particles replaced per elimination phase: ceil(e_t% * N).
std::size_t elimination_count(std::size_t population, double elim_percent);

/// Replaces the elimination_count() particles with the highest current cost
/// (equal costs: lower index replaced first) by fresh samples inside
/// their own boxes and resets their memories. Returns the replaced indices in
/// descending-cost order; the caller evaluates them.
std::vector<std::size_t> eliminate(Swarm& swarm, const SwarmConfig& cfg, SwarmRng& rng);

struct IterationStats {
  std::size_t iteration = 0;  ///< 0 is the initial population
  double best_cost = 0.0;
  double mean_cost = 0.0;
  double inertia = 0.0;
};

struct SwarmResult {
  std::vector<double> best_position;
  double best_cost = 0.0;
  std::vector<IterationStats> trace;  ///< iterations + 1 entries
  std::size_t evaluations = 0;
  Swarm final_swarm;
};

/// Optional hook run after each iteration (progress reporting, tests).
using IterationObserver = std::function<void(const Swarm&, const IterationStats&)>;

/// init -> evaluate -> repeat { update particles, evaluate, refresh bests,
/// decay inertia, and in MPSO mode every e_p iterations adapt_bounds then
/// eliminate } for cfg.iterations iterations.
SwarmResult run(const Objective& objective, const SwarmConfig& cfg, const Bounds& bounds,
                const IterationObserver& observer = {});

}  // namespace heliopt
