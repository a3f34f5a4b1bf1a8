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

// Closed-loop experiments: scenarios, the 25-parameter controller encoding
// tuned by the swarm, the simulation runner and the tracking/effort metrics.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "heliopt/dynamics.hpp"
#include "heliopt/fuzzy_controller.hpp"
#include "heliopt/pid.hpp"
#include "heliopt/swarm.hpp"

namespace heliopt {

enum class Axis { kRoll, kPitch, kYaw };

/// Constant angular-acceleration offset on one axis from `onset` onwards.
struct Disturbance {
  Axis axis = Axis::kRoll;
  double magnitude = 0.0;  ///< [rad/s^2]
  double onset = 0.0;      ///< [s]
};

/// What a mass change perturbs in the plant. The controller always keeps the
/// nominal constants.
enum class MassModel {
  kHelicopterOnly,  ///< scales M_h (and through it the gravity torque)
  kWholeSystem,     ///< also scales the counterweight and all three inertias
};

struct Scenario {
  std::string label = "nominal";
  double mass_scale = 1.0;
  MassModel mass_model = MassModel::kHelicopterOnly;
  std::vector<Disturbance> disturbances;
  double horizon = 20.0;
  double dt = 1e-3;
  /// Whether the plant enforces the rig's roll stop. Off by default: the
  /// reference settles at 1 rad, above the 30 degree stop.
  bool roll_stop = false;

  /// Throws ParameterError unless horizon > 0, dt > 0, mass_scale > 0 and
  /// every onset lies before the horizon.
  void validate() const;
  std::size_t sample_count() const;
  AngleEnvelope plant_envelope() const;
  ModelParams plant_params(const ModelParams& nominal) const;

  static Scenario nominal();
  static Scenario half_mass();
  static Scenario heavy();
  /// Steps of 1, 1 and 0.1 rad/s^2 on roll, pitch and yaw at 12, 14 and 16 s.
  static Scenario disturbed();
  /// nominal | half_mass | heavy | disturbed; throws ConfigError otherwise.
  static Scenario by_name(std::string_view name);
};

struct DesiredSample {
  double value = 0.0;
  double rate = 0.0;
  double accel = 0.0;
};

/// Roll and yaw reference: 1 / (1 + exp(-2.5 (t + 2))) and its derivatives.
DesiredSample desired_trajectory(double t);

inline constexpr std::size_t kParameterCount = 25;
using ParameterVector = std::array<double, kParameterCount>;

/// Named view of the 25 free controller parameters. Center entries are the
/// magnitudes of the negative-side centers (NL, NM, NS); Z is fixed at 0 and
/// the positive side mirrors them.
struct FuzzyParameters {
  double k_roll = 0.0;
  double k_yaw = 0.0;
  double k_pitch = 0.0;
  double kp = 0.0;
  double kd = 0.0;
  RuleVector gamma_roll_yaw{};
  RuleVector gamma_pitch{};
  std::array<double, 3> error_centers{};
  std::array<double, 3> rate_centers{};
};

/// Layout: [K_eps, K_psi, K_theta, Kp, Kd, Gamma_eps=psi (7), Gamma_theta (7),
/// |c_NL|, |c_NM|, |c_NS| for e (3), the same for e_dot (3)].
ParameterVector encode(const FuzzyParameters& p);

/// Inverse of encode. Center magnitudes are made non-negative and sorted
/// NL >= NM >= NS; for vectors already in that form decode is exact.
FuzzyParameters decode(std::span<const double> v);

struct FuzzyLoopConfigs {
  LoopConfig roll;
  LoopConfig yaw;
  LoopConfig pitch;
};

/// Builds the three loops with nominal eta values, sigma = 1, Q = I and
/// linear-feedback initial weights. Throws ParameterError when kp or kd is
/// not positive.
FuzzyLoopConfigs loop_configs(const FuzzyParameters& p, const ModelParams& nominal = {});

/// Optimized MPSO column of the published parameter table.
FuzzyParameters published_mpso_parameters();
/// Optimized PSO column of the published parameter table.
FuzzyParameters published_pso_parameters();

/// Search box: gains [0, 200], Kp/Kd [0, 100], Gamma [0, 100], centers [0, 10].
Bounds default_parameter_bounds();

struct Sample {
  double t = 0.0;
  HelicopterState state;
  double roll_desired = 0.0;
  double pitch_desired = 0.0;
  double yaw_desired = 0.0;
  double e_roll = 0.0;
  double e_pitch = 0.0;
  double e_yaw = 0.0;
  double v1 = 0.0;
  double v2 = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
};

struct RunRecord {
  std::string label;
  std::string controller;
  std::vector<Sample> samples;  ///< empty when series recording is off
  std::size_t steps_completed = 0;
  std::size_t steps_expected = 0;
  double rmse = 0.0;
  double iacs = 0.0;
  bool stable = true;
  std::uint64_t seed = 0;
  std::string digest;

  double completed_fraction() const;
};

using ControllerSpec = std::variant<FuzzyParameters, PidControllerGains>;

struct SimulationOptions {
  ModelParams model;          ///< nominal constants seen by the controller
  bool record_series = true;  ///< false keeps only the running metrics
  double divergence_limit = 1e6;
  std::uint64_t seed = 0;     ///< carried into the record for provenance
};

/// Integrates the closed loop from rest over the scenario horizon. A
/// non-finite or diverging state marks the record unstable and truncates it;
/// no exception escapes for numerical failure.
RunRecord simulate(const Scenario& scenario, const ControllerSpec& controller,
                   const SimulationOptions& options = {});

/// sqrt(mean over samples of e_roll^2 + e_yaw^2 + e_pitch^2)
double rmse(std::span<const Sample> samples);
/// Trapezoid integral of |v1| + |v2| + |u2|.
double iacs(std::span<const Sample> samples);
/// Earliest sample time after which roll and yaw stay within `tolerance` of
/// the 1 rad asymptote. +inf if the last sample is still outside.
double settling_time(std::span<const Sample> samples, double tolerance = 0.02);

inline constexpr double kInstabilityPenalty = 1e6;

/// decode -> simulate -> rmse. Unstable runs (and parameter vectors the
/// controller rejects) cost kInstabilityPenalty * (2 - completed fraction).
double objective(std::span<const double> pv, const Scenario& scenario,
                 const ModelParams& nominal = {});

/// 64-bit FNV-1a over a canonical text rendering, shown as 16 hex digits.
std::string config_digest(std::string_view canonical_text);

std::string_view axis_name(Axis axis);

}  // namespace heliopt
