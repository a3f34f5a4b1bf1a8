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

#include "heliopt/swarm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "heliopt/errors.hpp"

namespace heliopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sanitize(double c) { return std::isnan(c) ? kInf : c; }

void sample_into_box(Particle& p, SwarmRng& rng) {
  const std::size_t d = p.bounds.dimension();
  p.position.resize(d);
  p.velocity.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    p.position[j] = rng.uniform(p.bounds.lower[j], p.bounds.upper[j]);
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double half = 0.5 * (p.bounds.upper[j] - p.bounds.lower[j]);
    p.velocity[j] = rng.uniform(-half, half);
  }
  p.best_position = p.position;
  p.cost = kInf;
  p.best_cost = kInf;
}

}  // namespace

std::uint64_t SwarmRng::next_u64() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SwarmRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

void Bounds::validate() const {
  if (lower.size() != upper.size()) throw ParameterError("Bounds: size mismatch");
  if (lower.empty()) throw ParameterError("Bounds: zero dimension");
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || lower[j] > upper[j]) {
      throw ParameterError("Bounds: dimension " + std::to_string(j) + " is invalid");
    }
  }
}

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] < lower[j] || x[j] > upper[j]) return false;
  }
  return true;
}

void Particle::record_cost(double c) {
  cost = sanitize(c);
  if (cost < best_cost) {
    best_cost = cost;
    best_position = position;
  }
}

void SwarmConfig::validate() const {
  if (population == 0) throw ParameterError("SwarmConfig: population must be > 0");
  if (!(w_decay > 0.0 && w_decay <= 1.0)) {
    throw ParameterError("SwarmConfig: w_decay must lie in (0, 1]");
  }
  if (!(elim_percent >= 0.0 && elim_percent <= 100.0)) {
    throw ParameterError("SwarmConfig: elim_percent must lie in [0, 100]");
  }
  if (!(saturation_percent >= 0.0 && saturation_percent <= 100.0)) {
    throw ParameterError("SwarmConfig: saturation_percent must lie in [0, 100]");
  }
  if (mpso_enabled && elim_period == 0) {
    throw ParameterError("SwarmConfig: elim_period must be > 0");
  }
  if (!std::isfinite(w0) || !std::isfinite(c1) || !std::isfinite(c2)) {
    throw ParameterError("SwarmConfig: non-finite coefficient");
  }
}

void Swarm::refresh_global_best() {
  for (const Particle& p : particles) {
    if (p.best_cost < global_best_cost) {
      global_best_cost = p.best_cost;
      global_best_position = p.best_position;
    }
  }
}

double Swarm::mean_cost() const {
  if (particles.empty()) return 0.0;
  double sum = 0.0;
  for (const Particle& p : particles) sum += p.cost;
  return sum / static_cast<double>(particles.size());
}

Swarm init_swarm(const Bounds& bounds, const SwarmConfig& cfg, SwarmRng& rng) {
  bounds.validate();
  cfg.validate();
  Swarm swarm;
  swarm.initial_bounds = bounds;
  swarm.global_best_cost = kInf;
  swarm.global_best_position = bounds.lower;
  swarm.particles.resize(cfg.population);
  for (Particle& p : swarm.particles) {
    p.bounds = bounds;
    sample_into_box(p, rng);
  }
  return swarm;
}

void evaluate(Swarm& swarm, const Objective& objective, const SwarmConfig& cfg,
              std::span<const std::size_t> which) {
  std::vector<std::size_t> all;
  if (which.empty()) {
    all.resize(swarm.particles.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    which = all;
  }
  std::vector<double> costs(which.size(), kInf);
  const std::size_t workers = std::min<std::size_t>(std::max<std::size_t>(cfg.threads, 1),
                                                    which.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < which.size(); ++k) {
      costs[k] = objective(swarm.particles[which[k]].position);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t k = next++; k < which.size(); k = next++) {
        costs[k] = objective(swarm.particles[which[k]].position);
      }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (std::size_t k = 0; k < which.size(); ++k) swarm.particles[which[k]].record_cost(costs[k]);
  swarm.refresh_global_best();
}

void update_particle(Particle& p, std::span<const double> global_best, double inertia,
                     const SwarmConfig& cfg, const UniformSource& uniform) {
  for (std::size_t j = 0; j < p.position.size(); ++j) {
    const double r1 = uniform();
    const double r2 = uniform();
    p.velocity[j] = inertia * p.velocity[j] + cfg.c1 * r1 * (p.best_position[j] - p.position[j]) +
                    cfg.c2 * r2 * (global_best[j] - p.position[j]);
    p.position[j] += p.velocity[j];
    if (p.position[j] > p.bounds.upper[j]) {
      p.position[j] = p.bounds.upper[j];
      p.velocity[j] = 0.0;
    } else if (p.position[j] < p.bounds.lower[j]) {
      p.position[j] = p.bounds.lower[j];
      p.velocity[j] = 0.0;
    }
  }
}

double inertia_at(std::size_t iter, const SwarmConfig& cfg) {
  return cfg.w0 * std::pow(cfg.w_decay, static_cast<double>(iter));
}

void adapt_bounds(Particle& p, const Bounds& initial_bounds, double saturation_percent) {
  const double fraction = (100.0 - saturation_percent) / 100.0;
  for (std::size_t j = 0; j < p.position.size(); ++j) {
    const double unit = fraction * 0.5 * (initial_bounds.upper[j] - initial_bounds.lower[j]);
    const double x = p.position[j];
    double& hi = p.bounds.upper[j];
    double& lo = p.bounds.lower[j];
    hi = x >= hi ? hi + unit : std::max(hi - unit, x);
    lo = x <= lo ? lo - unit : std::min(lo + unit, x);
  }
}

std::size_t elimination_count(std::size_t population, double elim_percent) {
  // Round before the ceiling so that e.g. 20% of 30 is exactly 6.
  const double raw = std::round(elim_percent * static_cast<double>(population) * 1e6) / 1e8;
  return std::min(population, static_cast<std::size_t>(std::ceil(raw)));
}

std::vector<std::size_t> eliminate(Swarm& swarm, const SwarmConfig& cfg, SwarmRng& rng) {
  const std::size_t count = elimination_count(swarm.particles.size(), cfg.elim_percent);
  std::vector<std::size_t> order(swarm.particles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return swarm.particles[a].cost > swarm.particles[b].cost;
  });
  order.resize(count);
  for (std::size_t idx : order) sample_into_box(swarm.particles[idx], rng);
  return order;
}

SwarmResult run(const Objective& objective, const SwarmConfig& cfg, const Bounds& bounds,
                const IterationObserver& observer) {
  SwarmRng rng(cfg.seed);
  SwarmResult result;
  Swarm swarm = init_swarm(bounds, cfg, rng);
  evaluate(swarm, objective, cfg);
  result.evaluations = swarm.particles.size();
  result.trace.reserve(cfg.iterations + 1);

  auto record = [&](std::size_t iter, double w) {
    IterationStats st{iter, swarm.global_best_cost, swarm.mean_cost(), w};
    result.trace.push_back(st);
    if (observer) observer(swarm, st);
  };
  record(0, cfg.w0);

  const UniformSource draw = [&rng] { return rng.uniform(); };
  for (std::size_t iter = 1; iter <= cfg.iterations; ++iter) {
    const double w = inertia_at(iter - 1, cfg);
    // Every particle steers by the global best as it stood when the
    // iteration began.
    const std::vector<double> leader = swarm.global_best_position;
    for (Particle& p : swarm.particles) update_particle(p, leader, w, cfg, draw);
    evaluate(swarm, objective, cfg);
    result.evaluations += swarm.particles.size();

    if (cfg.mpso_enabled && iter % cfg.elim_period == 0) {
      for (Particle& p : swarm.particles) {
        adapt_bounds(p, swarm.initial_bounds, cfg.saturation_percent);
      }
      const std::vector<std::size_t> fresh = eliminate(swarm, cfg, rng);
      if (!fresh.empty()) {
        evaluate(swarm, objective, cfg, fresh);
        result.evaluations += fresh.size();
      }
    }
    record(iter, w);
  }

  result.best_position = swarm.global_best_position;
  result.best_cost = swarm.global_best_cost;
  result.final_swarm = std::move(swarm);
  return result;
}

}  // namespace heliopt
