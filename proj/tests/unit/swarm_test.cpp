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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "heliopt/errors.hpp"
#include "heliopt/swarm.hpp"
#include "support/oracles.hpp"

namespace heliopt {
namespace {

double sphere_at(std::span<const double> x, double centre) {
  double s = 0.0;
  for (double v : x) s += (v - centre) * (v - centre);
  return s;
}

Bounds box(std::size_t dim, double lo, double hi) {
  return {std::vector<double>(dim, lo), std::vector<double>(dim, hi)};
}

SwarmConfig small_config(bool mpso, std::uint64_t seed = 1) {
  SwarmConfig c;
  c.population = 12;
  c.iterations = 80;
  c.mpso_enabled = mpso;
  c.elim_period = 10;
  c.seed = seed;
  return c;
}

TEST(SwarmRngTest, MatchesSplitMix64Reference) {
  // First outputs of the published SplitMix64 generator for seed 0.
  SwarmRng rng(0);
  EXPECT_EQ(rng.next_u64(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next_u64(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next_u64(), 0x06C45D188009454FULL);
}

TEST(SwarmRngTest, UniformInUnitInterval) {
  SwarmRng rng(99);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(BoundsTest, ValidateAndContains) {
  EXPECT_THROW((Bounds{{0.0}, {}}).validate(), ParameterError);
  EXPECT_THROW((Bounds{{}, {}}).validate(), ParameterError);
  EXPECT_THROW((Bounds{{1.0}, {0.0}}).validate(), ParameterError);
  EXPECT_THROW((Bounds{{0.0}, {std::numeric_limits<double>::infinity()}}).validate(),
               ParameterError);
  const Bounds b{{0.0, -1.0}, {1.0, 1.0}};
  EXPECT_NO_THROW(b.validate());
  EXPECT_TRUE(b.contains(std::vector<double>{0.5, -1.0}));
  EXPECT_FALSE(b.contains(std::vector<double>{1.5, 0.0}));
  EXPECT_FALSE(b.contains(std::vector<double>{0.5}));
}

TEST(SwarmConfigTest, Defaults) {
  const SwarmConfig c;
  EXPECT_EQ(c.population, 30u);
  EXPECT_EQ(c.w0, 1.0);
  EXPECT_EQ(c.w_decay, 0.98);
  EXPECT_EQ(c.c1, 2.0);
  EXPECT_EQ(c.c2, 2.0);
  EXPECT_EQ(c.elim_percent, 75.0);
  EXPECT_EQ(c.elim_period, 40u);
  EXPECT_NO_THROW(c.validate());
}

TEST(SwarmConfigTest, Validation) {
  SwarmConfig c;
  c.population = 0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.w_decay = 0.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c.w_decay = 1.01;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.elim_percent = 101.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c = {};
  c.saturation_percent = -1.0;
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST(InitSwarmTest, Examples) {
  SwarmConfig cfg;
  SwarmRng rng(5);
  const Swarm point = init_swarm({{2.0, -3.0}, {2.0, -3.0}}, cfg, rng);
  for (const Particle& p : point.particles) {
    EXPECT_EQ(p.position, (std::vector<double>{2.0, -3.0}));
    EXPECT_EQ(p.velocity, (std::vector<double>{0.0, 0.0}));
  }

  SwarmRng a(42);
  SwarmRng b(42);
  const Bounds bounds = box(25, 0.0, 100.0);
  const Swarm sa = init_swarm(bounds, cfg, a);
  const Swarm sb = init_swarm(bounds, cfg, b);
  ASSERT_EQ(sa.particles.size(), 30u);
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_EQ(sa.particles[i].position, sb.particles[i].position);
    EXPECT_EQ(sa.particles[i].velocity, sb.particles[i].velocity);
    EXPECT_EQ(sa.particles[i].position.size(), 25u);
    EXPECT_TRUE(bounds.contains(sa.particles[i].position));
    for (double v : sa.particles[i].velocity) EXPECT_LE(std::abs(v), 50.0);
    EXPECT_EQ(sa.particles[i].best_position, sa.particles[i].position);
  }
}

TEST(InitSwarmTest, DrawOrderIsPositionsThenVelocities) {
  SwarmConfig cfg;
  cfg.population = 2;
  SwarmRng rng(3);
  const Swarm s = init_swarm(box(3, 0.0, 2.0), cfg, rng);
  SwarmRng replay(3);
  for (const Particle& p : s.particles) {
    for (double x : p.position) EXPECT_EQ(x, 0.0 + 2.0 * replay.uniform());
    for (double v : p.velocity) EXPECT_EQ(v, -1.0 + 2.0 * replay.uniform());
  }
}

Particle particle_1d(double x, double v, double pbest) {
  Particle p;
  p.position = {x};
  p.velocity = {v};
  p.best_position = {pbest};
  p.bounds = {{-100.0}, {100.0}};
  return p;
}

TEST(UpdateParticleTest, InertiaOnly) {
  SwarmConfig cfg;
  cfg.c1 = 0.0;
  cfg.c2 = 0.0;
  Particle p = particle_1d(1.0, 2.0, 7.0);
  update_particle(p, std::vector<double>{-5.0}, 1.0, cfg, [] { return 0.7; });
  EXPECT_EQ(p.velocity[0], 2.0);
  EXPECT_EQ(p.position[0], 3.0);
}

TEST(UpdateParticleTest, ConvergedFixedPoint) {
  SwarmConfig cfg;
  Particle p = particle_1d(4.0, 3.0, 4.0);
  update_particle(p, std::vector<double>{4.0}, 0.0, cfg, [] { return 0.9; });
  EXPECT_EQ(p.velocity[0], 0.0);
  EXPECT_EQ(p.position[0], 4.0);
}

TEST(UpdateParticleTest, HandEvaluation) {
  SwarmConfig cfg;
  cfg.c1 = 1.0;
  cfg.c2 = 1.0;
  Particle p = particle_1d(0.0, 2.0, 1.0);
  update_particle(p, std::vector<double>{3.0}, 0.5, cfg, [] { return 1.0; });
  EXPECT_EQ(p.velocity[0], 5.0);
  EXPECT_EQ(p.position[0], 5.0);
}

TEST(UpdateParticleTest, ClampZeroesOffendingVelocityOnly) {
  SwarmConfig cfg;
  cfg.c1 = 0.0;
  cfg.c2 = 0.0;
  Particle p;
  p.position = {0.5, 0.5};
  p.velocity = {2.0, 0.1};
  p.best_position = p.position;
  p.bounds = {{0.0, 0.0}, {1.0, 1.0}};
  update_particle(p, p.position, 1.0, cfg, [] { return 0.5; });
  EXPECT_EQ(p.position[0], 1.0);
  EXPECT_EQ(p.velocity[0], 0.0);
  EXPECT_DOUBLE_EQ(p.position[1], 0.6);
  EXPECT_EQ(p.velocity[1], 0.1);
}

TEST(InertiaTest, Examples) {
  const SwarmConfig cfg;
  EXPECT_EQ(inertia_at(0, cfg), 1.0);
  EXPECT_DOUBLE_EQ(inertia_at(1, cfg), 0.98);
  EXPECT_NEAR(inertia_at(100, cfg), 0.13262, 1e-5);
}

TEST(AdaptBoundsTest, WorkedExample) {
  const Bounds initial{{-1.0}, {1.0}};
  Particle at_top = particle_1d(1.0, 0.0, 0.0);
  at_top.bounds = initial;
  adapt_bounds(at_top, initial, 90.0);
  EXPECT_DOUBLE_EQ(at_top.bounds.upper[0], 1.1);

  Particle inside = particle_1d(0.5, 0.0, 0.0);
  inside.bounds = initial;
  adapt_bounds(inside, initial, 90.0);
  EXPECT_DOUBLE_EQ(inside.bounds.upper[0], 0.9);
  EXPECT_DOUBLE_EQ(inside.bounds.lower[0], -0.9);

  Particle at_bottom = particle_1d(-1.0, 0.0, 0.0);
  at_bottom.bounds = initial;
  adapt_bounds(at_bottom, initial, 90.0);
  EXPECT_DOUBLE_EQ(at_bottom.bounds.lower[0], -1.1);
  EXPECT_DOUBLE_EQ(at_bottom.bounds.upper[0], 0.9);
}

TEST(AdaptBoundsTest, FullSaturationFreezesBounds) {
  const Bounds initial{{-1.0, 0.0}, {1.0, 10.0}};
  Particle p;
  p.position = {1.0, 3.0};
  p.bounds = initial;
  adapt_bounds(p, initial, 100.0);
  EXPECT_EQ(p.bounds, initial);
}

TEST(AdaptBoundsTest, UnitScalesWithInitialHalfWidth) {
  const Bounds initial{{0.0}, {10.0}};
  Particle p = particle_1d(10.0, 0.0, 0.0);
  p.bounds = initial;
  adapt_bounds(p, initial, 90.0);
  EXPECT_DOUBLE_EQ(p.bounds.upper[0], 10.5);
}

TEST(AdaptBoundsTest, ShrinkNeverExcludesTheParticle) {
  const Bounds initial{{-1.0}, {1.0}};
  Particle p = particle_1d(0.95, 0.0, 0.0);
  p.bounds = initial;
  adapt_bounds(p, initial, 80.0);
  EXPECT_DOUBLE_EQ(p.bounds.upper[0], 0.95);
  EXPECT_TRUE(p.bounds.contains(p.position));
}

TEST(EliminationTest, Counts) {
  EXPECT_EQ(elimination_count(30, 20.0), 6u);
  EXPECT_EQ(elimination_count(30, 75.0), 23u);
  EXPECT_EQ(elimination_count(30, 0.0), 0u);
  EXPECT_EQ(elimination_count(30, 100.0), 30u);
  EXPECT_EQ(elimination_count(7, 10.0), 1u);
}

TEST(EliminationTest, ReplacesWorstWithTiesByIndex) {
  SwarmConfig cfg;
  cfg.population = 5;
  cfg.elim_percent = 40.0;
  SwarmRng rng(1);
  Swarm s = init_swarm(box(2, 0.0, 1.0), cfg, rng);
  const double costs[] = {3.0, 9.0, 1.0, 9.0, 9.0};
  for (std::size_t i = 0; i < 5; ++i) s.particles[i].record_cost(costs[i]);
  s.refresh_global_best();
  const double best = s.global_best_cost;
  const std::vector<std::size_t> replaced = eliminate(s, cfg, rng);
  EXPECT_EQ(replaced, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(s.particles.size(), 5u);
  EXPECT_TRUE(std::isinf(s.particles[1].best_cost));
  EXPECT_EQ(s.particles[4].cost, 9.0);
  EXPECT_EQ(s.global_best_cost, best);
}

TEST(EliminationTest, ZeroPercentLeavesSwarm) {
  SwarmConfig cfg;
  cfg.population = 4;
  cfg.elim_percent = 0.0;
  SwarmRng rng(2);
  Swarm s = init_swarm(box(2, 0.0, 1.0), cfg, rng);
  const Swarm before = s;
  EXPECT_TRUE(eliminate(s, cfg, rng).empty());
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s.particles[i].position, before.particles[i].position);
}

TEST(EliminationTest, FreshParticlesLandInTheirOwnBoxes) {
  SwarmConfig cfg;
  cfg.population = 6;
  cfg.elim_percent = 100.0;
  SwarmRng rng(2);
  Swarm s = init_swarm(box(3, 0.0, 1.0), cfg, rng);
  for (Particle& p : s.particles) p.bounds = box(3, 5.0, 6.0);
  eliminate(s, cfg, rng);
  for (const Particle& p : s.particles) EXPECT_TRUE(p.bounds.contains(p.position));
}

TEST(RecordCostTest, NanCountsAsInfinite) {
  Particle p = particle_1d(0.0, 0.0, 0.0);
  p.best_cost = 5.0;
  p.record_cost(std::numeric_limits<double>::quiet_NaN());
  EXPECT_TRUE(std::isinf(p.cost));
  EXPECT_EQ(p.best_cost, 5.0);
}

TEST(RunTest, ConvexSanity) {
  for (bool mpso : {false, true}) {
    SwarmConfig cfg;
    cfg.iterations = 200;
    cfg.mpso_enabled = mpso;
    const SwarmResult r =
        run([](std::span<const double> x) { return sphere_at(x, 0.3); }, cfg, box(5, -1.0, 1.0));
    EXPECT_LE(r.best_cost, 1e-6) << (mpso ? "mpso" : "pso");
    EXPECT_EQ(r.trace.size(), 201u);
  }
}

TEST(RunTest, InvariantsHoldEveryIteration) {
  for (bool mpso : {false, true}) {
    const SwarmConfig cfg = small_config(mpso);
    const Bounds bounds = box(4, -2.0, 2.0);
    double last_best = std::numeric_limits<double>::infinity();
    std::vector<double> last_pbest(cfg.population, std::numeric_limits<double>::infinity());
    run([](std::span<const double> x) { return sphere_at(x, 1.7); }, cfg, bounds,
        [&](const Swarm& s, const IterationStats& st) {
          ASSERT_EQ(s.particles.size(), cfg.population);
          EXPECT_LE(st.best_cost, last_best);
          last_best = st.best_cost;
          const bool eliminated = mpso && st.iteration > 0 && st.iteration % cfg.elim_period == 0;
          for (std::size_t i = 0; i < s.particles.size(); ++i) {
            const Particle& p = s.particles[i];
            EXPECT_TRUE(p.bounds.contains(p.position));
            EXPECT_LE(p.best_cost, p.cost);
            if (!mpso) EXPECT_EQ(p.bounds, bounds);
            if (!eliminated) EXPECT_LE(p.best_cost, last_pbest[i]);
            last_pbest[i] = p.best_cost;
          }
        });
  }
}

TEST(RunTest, DeterministicAndThreadCountIndependent) {
  const Objective f = [](std::span<const double> x) { return sphere_at(x, -0.4) + std::sin(x[0]); };
  SwarmConfig cfg = small_config(true, 77);
  const SwarmResult a = run(f, cfg, box(6, -1.0, 1.0));
  const SwarmResult b = run(f, cfg, box(6, -1.0, 1.0));
  cfg.threads = 4;
  const SwarmResult c = run(f, cfg, box(6, -1.0, 1.0));
  EXPECT_EQ(a.best_position, b.best_position);
  EXPECT_EQ(a.best_position, c.best_position);
  ASSERT_EQ(a.trace.size(), c.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    EXPECT_EQ(a.trace[i].best_cost, c.trace[i].best_cost);
    EXPECT_EQ(a.trace[i].mean_cost, c.trace[i].mean_cost);
  }
}

TEST(RunTest, TraceRecordsInertiaSchedule) {
  const SwarmConfig cfg = small_config(false);
  const SwarmResult r = run([](std::span<const double> x) { return sphere_at(x, 0.0); }, cfg,
                            box(2, -1.0, 1.0));
  EXPECT_EQ(r.trace[0].inertia, 1.0);
  EXPECT_EQ(r.trace[1].inertia, 1.0);
  EXPECT_EQ(r.trace[2].inertia, inertia_at(1, cfg));
  EXPECT_EQ(r.evaluations, cfg.population * (cfg.iterations + 1));
}

TEST(RunTest, PsoModeMatchesReferenceImplementation) {
  const Objective f = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += (j + 1.0) * std::pow(x[j] - 0.25, 2) + std::cos(3 * x[j]);
    return s;
  };
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    SwarmConfig cfg = small_config(false, seed);
    cfg.iterations = 150;
    const Bounds bounds{{-2.0, -1.0, 0.0, -3.0}, {2.0, 1.0, 0.5, 3.0}};
    const SwarmResult r = run(f, cfg, bounds);
    const oracle::ReferencePsoResult ref =
        oracle::reference_pso(f, bounds.lower, bounds.upper, cfg.population, cfg.iterations,
                              cfg.w0, cfg.w_decay, cfg.c1, cfg.c2, seed);
    EXPECT_EQ(r.best_position, ref.best_position);
    EXPECT_EQ(r.best_cost, ref.best_cost);
    ASSERT_EQ(r.trace.size(), ref.best_trace.size());
    for (std::size_t i = 0; i < r.trace.size(); ++i) EXPECT_EQ(r.trace[i].best_cost, ref.best_trace[i]);
  }
}

TEST(RunTest, BoundExpansionReachesOutsideMinimum) {
  SwarmConfig cfg;
  cfg.iterations = 500;
  const Objective f = [](std::span<const double> x) { return sphere_at(x, 1.5); };
  std::vector<double> mpso;
  std::vector<double> pso;
  bool expanded = false;
  for (std::uint64_t seed = 1; seed <= 11; ++seed) {
    cfg.seed = seed;
    cfg.mpso_enabled = true;
    const SwarmResult m = run(f, cfg, box(10, -1.0, 1.0));
    mpso.push_back(m.best_cost);
    for (const Particle& p : m.final_swarm.particles) expanded |= !(p.bounds == m.final_swarm.initial_bounds);
    cfg.mpso_enabled = false;
    pso.push_back(run(f, cfg, box(10, -1.0, 1.0)).best_cost);
  }
  std::nth_element(mpso.begin(), mpso.begin() + 5, mpso.end());
  std::nth_element(pso.begin(), pso.begin() + 5, pso.end());
  EXPECT_LT(mpso[5], pso[5]);
  EXPECT_TRUE(expanded);
}

}  // namespace
}  // namespace heliopt
