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

#include <cmath>
#include <limits>
#include <random>

#include "heliopt/errors.hpp"
#include "heliopt/experiments.hpp"

namespace heliopt {
namespace {

// A short horizon keeps the closed-loop tests fast.
Scenario short_run(Scenario s, double horizon = 2.0) {
  s.horizon = horizon;
  for (Disturbance& d : s.disturbances) d.onset = std::min(d.onset, horizon / 2);
  return s;
}

FuzzyParameters tame_parameters() {
  FuzzyParameters p;
  p.k_roll = p.k_yaw = p.k_pitch = 100.0;
  p.kp = 4.0;
  p.kd = 4.0;
  p.gamma_roll_yaw.fill(1.0);
  p.gamma_pitch.fill(1.0);
  p.error_centers = {3.0, 2.0, 1.0};
  p.rate_centers = {3.0, 2.0, 1.0};
  return p;
}

Sample sample(double t, double er, double ep, double ey, double v1, double v2, double u2) {
  Sample s;
  s.t = t;
  s.e_roll = er;
  s.e_pitch = ep;
  s.e_yaw = ey;
  s.v1 = v1;
  s.v2 = v2;
  s.u2 = u2;
  return s;
}

TEST(DesiredTrajectoryTest, Examples) {
  EXPECT_DOUBLE_EQ(desired_trajectory(-2.0).value, 0.5);
  EXPECT_NEAR(desired_trajectory(0.0).value, 1.0 / (1.0 + std::exp(-5.0)), 1e-15);
  EXPECT_NEAR(desired_trajectory(0.0).value, 0.993307, 1e-6);
  EXPECT_DOUBLE_EQ(desired_trajectory(1e3).value, 1.0);
}

TEST(DesiredTrajectoryTest, DerivativesMatchFiniteDifferences) {
  for (double t = 0.0; t <= 5.0; t += 0.25) {
    const double h = 1e-5;
    const double fd = (desired_trajectory(t + h).value - desired_trajectory(t - h).value) / (2 * h);
    const double fd2 = (desired_trajectory(t + h).rate - desired_trajectory(t - h).rate) / (2 * h);
    EXPECT_NEAR(desired_trajectory(t).rate, fd, 1e-9);
    EXPECT_NEAR(desired_trajectory(t).accel, fd2, 1e-8);
  }
}

TEST(ScenarioTest, FactoriesAndValidation) {
  EXPECT_EQ(Scenario::nominal().mass_scale, 1.0);
  EXPECT_EQ(Scenario::half_mass().mass_scale, 0.5);
  EXPECT_EQ(Scenario::heavy().mass_scale, 1.5);
  const Scenario d = Scenario::disturbed();
  ASSERT_EQ(d.disturbances.size(), 3u);
  EXPECT_EQ(d.disturbances[0].magnitude, 1.0);
  EXPECT_EQ(d.disturbances[1].onset, 14.0);
  EXPECT_EQ(d.disturbances[2].magnitude, 0.1);
  EXPECT_EQ(Scenario::by_name("heavy").label, "heavy");
  EXPECT_THROW(Scenario::by_name("moon"), ConfigError);
  EXPECT_EQ(Scenario::nominal().sample_count(), 20001u);

  Scenario bad;
  bad.horizon = 0.0;
  EXPECT_THROW(bad.validate(), ParameterError);
  bad = Scenario::disturbed();
  bad.horizon = 14.0;
  EXPECT_THROW(bad.validate(), ParameterError);
}

TEST(ScenarioTest, MassScalingTouchesOnlyThePlant) {
  const ModelParams nominal;
  Scenario s = Scenario::half_mass();
  s.mass_model = MassModel::kHelicopterOnly;
  ModelParams p = s.plant_params(nominal);
  EXPECT_EQ(p.heli_mass, 0.5 * nominal.heli_mass);
  EXPECT_EQ(p.counter_mass, nominal.counter_mass);
  EXPECT_EQ(p.pitch_inertia, nominal.pitch_inertia);
  s.mass_model = MassModel::kWholeSystem;
  p = s.plant_params(nominal);
  EXPECT_EQ(p.counter_mass, 0.5 * nominal.counter_mass);
  EXPECT_EQ(p.roll_inertia, 0.5 * nominal.roll_inertia);
  EXPECT_EQ(p.pitch_inertia, 0.5 * nominal.pitch_inertia);
}

TEST(ParameterVectorTest, PublishedColumnDecodes) {
  const FuzzyParameters p = decode(encode(published_mpso_parameters()));
  EXPECT_EQ(p.k_roll, 83.21);
  EXPECT_EQ(p.gamma_pitch, (RuleVector{53, 48, 11, 49, 3, 88, 19}));
  EXPECT_EQ(p.rate_centers[0], 9.51);
  const FuzzyLoopConfigs loops = loop_configs(p);
  EXPECT_EQ(loops.roll.output_gain, 83.21);
  EXPECT_EQ(loops.yaw.output_gain, 168.53);
  EXPECT_EQ(loops.pitch.output_gain, 10.15);
  EXPECT_EQ(loops.roll.rules.error_rate[0].center, -9.51);
  EXPECT_EQ(loops.roll.rules.error_rate[6].center, 9.51);
  EXPECT_EQ(loops.roll.gamma, loops.yaw.gamma);
}

TEST(ParameterVectorTest, RoundTripOnCanonicalVectors) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> any(0.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    ParameterVector v;
    for (double& x : v) x = any(gen);
    std::sort(v.begin() + 19, v.begin() + 22, std::greater<>());
    std::sort(v.begin() + 22, v.end(), std::greater<>());
    EXPECT_EQ(encode(decode(v)), v);
  }
}

TEST(ParameterVectorTest, CentersAreCanonicalised) {
  ParameterVector v{};
  v[19] = 1.0;
  v[20] = -5.0;
  v[21] = 3.0;
  const FuzzyParameters p = decode(v);
  EXPECT_EQ(p.error_centers, (std::array<double, 3>{5.0, 3.0, 1.0}));
  EXPECT_THROW(decode(std::vector<double>(24, 0.0)), ParameterError);
}

TEST(ParameterVectorTest, ZeroVectorHasZeroGains) {
  const FuzzyParameters p = decode(ParameterVector{});
  EXPECT_EQ(p.k_roll, 0.0);
  EXPECT_EQ(p.k_yaw, 0.0);
  EXPECT_EQ(p.k_pitch, 0.0);
}

TEST(ParameterVectorTest, SearchBox) {
  const Bounds b = default_parameter_bounds();
  ASSERT_EQ(b.dimension(), kParameterCount);
  EXPECT_EQ(b.upper[0], 200.0);
  EXPECT_EQ(b.upper[3], 100.0);
  EXPECT_EQ(b.upper[12], 100.0);
  EXPECT_EQ(b.upper[24], 10.0);
  for (double lo : b.lower) EXPECT_EQ(lo, 0.0);
}

TEST(MetricsTest, RmseExamples) {
  std::vector<Sample> s(10);
  EXPECT_EQ(rmse(s), 0.0);
  for (Sample& x : s) x.e_roll = 1.0;
  EXPECT_DOUBLE_EQ(rmse(s), 1.0);
  for (Sample& x : s) x = sample(0.0, 1.0, 1.0, 1.0, 0, 0, 0);
  EXPECT_NEAR(rmse(s), std::sqrt(3.0), 1e-15);
  EXPECT_EQ(rmse(std::vector<Sample>{}), 0.0);
}

TEST(MetricsTest, IacsExamples) {
  std::vector<Sample> s;
  for (int k = 0; k <= 1000; ++k) s.push_back(sample(0.001 * k, 0, 0, 0, 0, 0, 0));
  EXPECT_EQ(iacs(s), 0.0);
  for (Sample& x : s) x.v1 = -1.0;
  EXPECT_NEAR(iacs(s), 1.0, 1e-9);
}

TEST(MetricsTest, IacsIsAdditiveOverSegments) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> any(-5.0, 5.0);
  std::vector<Sample> s;
  for (int k = 0; k <= 200; ++k) s.push_back(sample(0.01 * k, 0, 0, 0, any(gen), any(gen), any(gen)));
  const std::span<const Sample> all(s);
  EXPECT_NEAR(iacs(all), iacs(all.first(81)) + iacs(all.subspan(80)), 1e-12);
  EXPECT_GE(iacs(all), 0.0);
}

TEST(MetricsTest, SettlingTimeExamples) {
  std::vector<Sample> s;
  for (int k = 0; k <= 10; ++k) {
    Sample x = sample(0.1 * k, 0, 0, 0, 0, 0, 0);
    x.state.roll = x.state.yaw = 1.0;
    s.push_back(x);
  }
  EXPECT_EQ(settling_time(s), 0.0);
  s[3].state.yaw = 0.97;
  EXPECT_DOUBLE_EQ(settling_time(s), 0.4);
  s[6].state.roll = 1.0 + 0.0201;
  EXPECT_DOUBLE_EQ(settling_time(s), 0.7);
  EXPECT_DOUBLE_EQ(settling_time(s, 0.05), 0.0);
  s.back().state.roll = 0.5;
  EXPECT_EQ(settling_time(s), std::numeric_limits<double>::infinity());
  EXPECT_EQ(settling_time(std::vector<Sample>{}), std::numeric_limits<double>::infinity());
  EXPECT_THROW(settling_time(s, 0.0), ParameterError);
}

TEST(SimulateTest, RecordShapeAndMetricsAgree) {
  const RunRecord r = simulate(short_run(Scenario::nominal()), tame_parameters());
  EXPECT_TRUE(r.stable);
  EXPECT_EQ(r.samples.size(), 2001u);
  EXPECT_EQ(r.steps_completed, 2000u);
  EXPECT_EQ(r.completed_fraction(), 1.0);
  EXPECT_NEAR(r.rmse, rmse(r.samples), 1e-12);
  EXPECT_NEAR(r.iacs, iacs(r.samples), 1e-9);
  EXPECT_EQ(r.samples.front().t, 0.0);
  EXPECT_EQ(r.samples.front().state, HelicopterState{});
  EXPECT_NEAR(r.samples.back().t, 2.0, 1e-12);
  EXPECT_EQ(r.digest.size(), 16u);
}

TEST(SimulateTest, MetricOnlyRunMatchesRecordedRun) {
  SimulationOptions opts;
  opts.record_series = false;
  const Scenario s = short_run(Scenario::nominal());
  const RunRecord lean = simulate(s, tame_parameters(), opts);
  const RunRecord full = simulate(s, tame_parameters());
  EXPECT_TRUE(lean.samples.empty());
  EXPECT_EQ(lean.rmse, full.rmse);
  EXPECT_EQ(lean.iacs, full.iacs);
}

TEST(SimulateTest, UnitMassScaleIsBitIdenticalToNominal) {
  Scenario s = short_run(Scenario::heavy());
  s.mass_scale = 1.0;
  s.label = "nominal";
  const RunRecord a = simulate(s, tame_parameters());
  const RunRecord b = simulate(short_run(Scenario::nominal()), tame_parameters());
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t k = 0; k < a.samples.size(); ++k) ASSERT_EQ(a.samples[k].state, b.samples[k].state);
  EXPECT_EQ(a.rmse, b.rmse);
}

TEST(SimulateTest, ZeroGainControllerDriftsUnderGravity) {
  FuzzyParameters p = tame_parameters();
  p.k_roll = p.k_yaw = p.k_pitch = 0.0;
  const RunRecord r = simulate(short_run(Scenario::nominal()), p);
  EXPECT_TRUE(r.stable);
  EXPECT_GT(r.rmse, 0.0);
  for (const Sample& s : r.samples) {
    EXPECT_EQ(s.u1, 0.0);
    EXPECT_EQ(s.u2, 0.0);
  }
  const double acc = 9.81 * (1.426 * 0.660 - 1.870 * 0.470) / 1.0348;
  EXPECT_NEAR(r.samples[100].state.roll, 0.5 * acc * 0.01, 1e-6);
}

TEST(SimulateTest, DisturbanceLeavesPrefixUntouched) {
  Scenario dist = Scenario::disturbed();
  dist.horizon = 3.0;
  dist.disturbances = {{Axis::kRoll, 1.0, 1.2}, {Axis::kPitch, 1.0, 1.4}, {Axis::kYaw, 0.1, 1.6}};
  const Scenario plain = short_run(Scenario::nominal(), 3.0);
  const RunRecord a = simulate(dist, tame_parameters());
  const RunRecord b = simulate(plain, tame_parameters());
  bool diverged_after = false;
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    if (a.samples[k].t <= 1.2) {
      ASSERT_EQ(a.samples[k].state, b.samples[k].state) << k;
      ASSERT_EQ(a.samples[k].u1, b.samples[k].u1) << k;
    } else if (!(a.samples[k].state == b.samples[k].state)) {
      diverged_after = true;
    }
  }
  EXPECT_TRUE(diverged_after);
}

TEST(SimulateTest, RejectedParametersAreUnstableNotThrown) {
  const RunRecord r = simulate(short_run(Scenario::nominal()), decode(ParameterVector{}));
  EXPECT_FALSE(r.stable);
  EXPECT_EQ(r.steps_completed, 0u);
}

TEST(SimulateTest, DivergenceIsFlaggedAndTruncated) {
  FuzzyParameters p = tame_parameters();
  p.gamma_roll_yaw.fill(1e9);
  p.gamma_pitch.fill(1e9);
  SimulationOptions opts;
  opts.divergence_limit = 50.0;
  const RunRecord r = simulate(short_run(Scenario::nominal(), 20.0), p, opts);
  EXPECT_FALSE(r.stable);
  EXPECT_LT(r.steps_completed, r.steps_expected);
  EXPECT_EQ(r.samples.size(), r.steps_completed + 1);
  for (const Sample& s : r.samples) EXPECT_TRUE(s.state.is_finite());
}

TEST(PidBaselineTest, DefaultGainsHoldSteadyStateBound) {
  const RunRecord r = simulate(Scenario::nominal(), PidControllerGains{});
  ASSERT_TRUE(r.stable);
  for (const Sample& x : r.samples) {
    if (x.t < 19.0) continue;
    EXPECT_LT(std::abs(x.e_roll), 0.02) << x.t;
    EXPECT_LT(std::abs(x.e_yaw), 0.02) << x.t;
  }
}

TEST(PidBaselineTest, SettlesLaterThanSwarmTunedFuzzy) {
  // Best vector of a 30 x 100 MPSO run, seed 1.
  const std::vector<double> tuned{
      194.01255741620409, 51.883507474186388, 199.6471419823408,  96.145551539535035,
      51.523139706598407, 38.621474070701005, 8.2846695192210422, 0,
      15.318180103857131, 4.7768747708135813, 76.839979071460448, 10.693939604286717,
      0,                  19.095896977356158, 62.058421292145198, 90.100293077798767,
      10.782723862214789, 93.910522982020524, 14.401348496874178, 8.6524595962218687,
      9.1728141025752929, 0.22813141955226449, 0.18821242211166908, 8.0973799333721423,
      9.499964608798809};
  const RunRecord fuzzy = simulate(Scenario::nominal(), decode(tuned));
  const RunRecord pid = simulate(Scenario::nominal(), PidControllerGains{});
  ASSERT_TRUE(fuzzy.stable);
  const double tf = settling_time(fuzzy.samples);
  const double tp = settling_time(pid.samples);
  EXPECT_LT(tf, 20.0);
  EXPECT_GT(tp, tf);
}

TEST(ObjectiveTest, PenaltyAndDeterminism) {
  const Scenario s = short_run(Scenario::nominal());
  EXPECT_GE(objective(ParameterVector{}, s), kInstabilityPenalty);
  EXPECT_DOUBLE_EQ(objective(ParameterVector{}, s), 2.0 * kInstabilityPenalty);
  const ParameterVector v = encode(tame_parameters());
  const double a = objective(v, s);
  EXPECT_EQ(a, objective(v, s));
  EXPECT_EQ(a, simulate(s, tame_parameters()).rmse);
}

TEST(ConfigDigestTest, Fnv1a) {
  EXPECT_EQ(config_digest(""), "cbf29ce484222325");
  EXPECT_EQ(config_digest("a"), "af63dc4c8601ec8c");
  EXPECT_NE(simulate(short_run(Scenario::nominal()), tame_parameters()).digest,
            simulate(short_run(Scenario::heavy()), tame_parameters()).digest);
}

}  // namespace
}  // namespace heliopt
