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

#include "heliopt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

#include "heliopt/errors.hpp"

namespace heliopt {
namespace {

constexpr std::size_t kGainSlots = 3;
constexpr std::size_t kKpSlot = 3;
constexpr std::size_t kKdSlot = 4;
constexpr std::size_t kGammaRollYawSlot = 5;
constexpr std::size_t kGammaPitchSlot = 12;
constexpr std::size_t kErrorCenterSlot = 19;
constexpr std::size_t kRateCenterSlot = 22;

std::array<double, 3> canonical_centers(std::span<const double> raw) {
  std::array<double, 3> c{std::abs(raw[0]), std::abs(raw[1]), std::abs(raw[2])};
  std::sort(c.begin(), c.end(), std::greater<>());
  return c;
}

std::string canonical_text(const Scenario& sc, const ControllerSpec& ctl, const ModelParams& m) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "scenario=" << sc.label << ";mass=" << sc.mass_scale
     << ";mass_model=" << static_cast<int>(sc.mass_model) << ";horizon=" << sc.horizon
     << ";dt=" << sc.dt << ";roll_stop=" << sc.roll_stop;
  for (const Disturbance& d : sc.disturbances) {
    os << ";dist=" << axis_name(d.axis) << ':' << d.magnitude << '@' << d.onset;
  }
  os << ";model=" << m.heli_mass << ',' << m.counter_mass << ',' << m.arm_length << ','
     << m.counter_arm << ',' << m.rotor_arm << ',' << m.roll_inertia << ',' << m.pitch_inertia
     << ',' << m.yaw_inertia << ',' << m.gravity;
  if (const auto* f = std::get_if<FuzzyParameters>(&ctl)) {
    os << ";fuzzy=";
    for (double v : encode(*f)) os << v << ',';
  } else {
    const auto& g = std::get<PidControllerGains>(ctl);
    os << ";pid=";
    for (const PidGains* pg : {&g.roll, &g.yaw, &g.pitch}) {
      os << pg->kp << ',' << pg->ki << ',' << pg->kd << ',' << pg->integral_limit << ';';
    }
  }
  return os.str();
}

// Uniform interface over the two controller families.
class ClosedLoop {
 public:
  ClosedLoop(const ControllerSpec& controller, const ModelParams& nominal) {
    if (const auto* f = std::get_if<FuzzyParameters>(&controller)) {
      const FuzzyLoopConfigs cfg = loop_configs(*f, nominal);
      impl_.emplace<FuzzyController>(cfg.roll, cfg.yaw, cfg.pitch);
    } else {
      impl_.emplace<PidController>(std::get<PidControllerGains>(controller));
    }
  }

  ControlSignals step(const HelicopterState& s, const Reference& ref, double dt) {
    return std::visit(
        [&](auto& c) -> ControlSignals {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, std::monostate>) {
            return {};
          } else {
            return c.step(s, ref, dt);
          }
        },
        impl_);
  }

 private:
  std::variant<std::monostate, FuzzyController, PidController> impl_;
};

bool diverged(const HelicopterState& s, double limit) {
  return std::abs(s.roll) > limit || std::abs(s.pitch) > limit || std::abs(s.yaw) > limit ||
         std::abs(s.roll_rate) > limit || std::abs(s.pitch_rate) > limit ||
         std::abs(s.yaw_rate) > limit;
}

}  // namespace

void Scenario::validate() const {
  if (!(horizon > 0.0)) throw ParameterError("Scenario: horizon must be > 0");
  if (!(dt > 0.0)) throw ParameterError("Scenario: dt must be > 0");
  if (!(mass_scale > 0.0)) throw ParameterError("Scenario: mass_scale must be > 0");
  for (const Disturbance& d : disturbances) {
    if (!(d.onset < horizon) || !std::isfinite(d.magnitude)) {
      throw ParameterError("Scenario: disturbance onset must precede the horizon");
    }
  }
}

std::size_t Scenario::sample_count() const {
  return static_cast<std::size_t>(std::llround(horizon / dt)) + 1;
}

AngleEnvelope Scenario::plant_envelope() const {
  AngleEnvelope env;
  if (!roll_stop) {
    env.roll_min = -std::numeric_limits<double>::infinity();
    env.roll_max = std::numeric_limits<double>::infinity();
  }
  return env;
}

ModelParams Scenario::plant_params(const ModelParams& nominal) const {
  ModelParams p = nominal;
  p.heli_mass *= mass_scale;
  if (mass_model == MassModel::kWholeSystem) {
    p.counter_mass *= mass_scale;
    p.roll_inertia *= mass_scale;
    p.pitch_inertia *= mass_scale;
    p.yaw_inertia *= mass_scale;
  }
  return p;
}

Scenario Scenario::nominal() { return Scenario{}; }

Scenario Scenario::half_mass() {
  Scenario s;
  s.label = "half_mass";
  s.mass_scale = 0.5;
  return s;
}

Scenario Scenario::heavy() {
  Scenario s;
  s.label = "heavy";
  s.mass_scale = 1.5;
  return s;
}

Scenario Scenario::disturbed() {
  Scenario s;
  s.label = "disturbed";
  s.disturbances = {{Axis::kRoll, 1.0, 12.0}, {Axis::kPitch, 1.0, 14.0}, {Axis::kYaw, 0.1, 16.0}};
  return s;
}

Scenario Scenario::by_name(std::string_view name) {
  if (name == "nominal") return nominal();
  if (name == "half_mass") return half_mass();
  if (name == "heavy") return heavy();
  if (name == "disturbed") return disturbed();
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

DesiredSample desired_trajectory(double t) {
  const double s = 1.0 / (1.0 + std::exp(-2.5 * (t + 2.0)));
  const double rate = 2.5 * s * (1.0 - s);
  return {s, rate, 2.5 * rate * (1.0 - 2.0 * s)};
}

ParameterVector encode(const FuzzyParameters& p) {
  ParameterVector v{};
  v[0] = p.k_roll;
  v[1] = p.k_yaw;
  v[2] = p.k_pitch;
  v[kKpSlot] = p.kp;
  v[kKdSlot] = p.kd;
  std::copy(p.gamma_roll_yaw.begin(), p.gamma_roll_yaw.end(), v.begin() + kGammaRollYawSlot);
  std::copy(p.gamma_pitch.begin(), p.gamma_pitch.end(), v.begin() + kGammaPitchSlot);
  std::copy(p.error_centers.begin(), p.error_centers.end(), v.begin() + kErrorCenterSlot);
  std::copy(p.rate_centers.begin(), p.rate_centers.end(), v.begin() + kRateCenterSlot);
  return v;
}

FuzzyParameters decode(std::span<const double> v) {
  if (v.size() != kParameterCount) {
    throw ParameterError("decode: expected " + std::to_string(kParameterCount) + " values");
  }
  FuzzyParameters p;
  p.k_roll = v[0];
  p.k_yaw = v[1];
  p.k_pitch = v[2];
  p.kp = v[kKpSlot];
  p.kd = v[kKdSlot];
  std::copy_n(v.begin() + kGammaRollYawSlot, kRuleCount, p.gamma_roll_yaw.begin());
  std::copy_n(v.begin() + kGammaPitchSlot, kRuleCount, p.gamma_pitch.begin());
  p.error_centers = canonical_centers(v.subspan(kErrorCenterSlot, 3));
  p.rate_centers = canonical_centers(v.subspan(kRateCenterSlot, 3));
  return p;
}

FuzzyLoopConfigs loop_configs(const FuzzyParameters& p, const ModelParams& nominal) {
  const EtaValues eta = eta_values(nominal);
  const RuleBase rules = RuleBase::symmetric(p.error_centers, p.rate_centers);
  auto make = [&](double gain, const RuleVector& gamma, double eta_hat) {
    LoopConfig c;
    c.rules = rules;
    c.gamma = gamma;
    c.kp = p.kp;
    c.kd = p.kd;
    c.eta = eta_hat;
    c.output_gain = gain;
    c.weight_init = WeightInit::kLinearFeedback;
    return c;
  };
  return {make(p.k_roll, p.gamma_roll_yaw, eta.roll), make(p.k_yaw, p.gamma_roll_yaw, eta.yaw),
          make(p.k_pitch, p.gamma_pitch, eta.pitch)};
}

FuzzyParameters published_mpso_parameters() {
  FuzzyParameters p;
  p.k_roll = 83.21;
  p.k_yaw = 168.53;
  p.k_pitch = 10.15;
  p.kp = 1.78;
  p.kd = 48.46;
  p.gamma_roll_yaw = {79, 68, 33, 0, 79, 42, 76};
  p.gamma_pitch = {53, 48, 11, 49, 3, 88, 19};
  p.error_centers = {2.80, 0.00, 0.00};
  p.rate_centers = {9.51, 6.32, 0.97};
  return p;
}

FuzzyParameters published_pso_parameters() {
  FuzzyParameters p;
  p.k_roll = 68.46;
  p.k_yaw = 157.95;
  p.k_pitch = 125.58;
  p.kp = 5.57;
  p.kd = 33.19;
  p.gamma_roll_yaw = {70, 102, 77, 125, 55, 13, 112};
  p.gamma_pitch = {172, 100, 119, 185, 70, 155, 113};
  p.error_centers = {120.92, 48.60, 0.04};
  p.rate_centers = {129.19, 125.02, 0.75};
  return p;
}

Bounds default_parameter_bounds() {
  Bounds b;
  b.lower.assign(kParameterCount, 0.0);
  b.upper.assign(kParameterCount, 100.0);
  for (std::size_t j = 0; j < kGainSlots; ++j) b.upper[j] = 200.0;
  for (std::size_t j = kErrorCenterSlot; j < kParameterCount; ++j) b.upper[j] = 10.0;
  return b;
}

double RunRecord::completed_fraction() const {
  if (steps_expected == 0) return 0.0;
  return static_cast<double>(steps_completed) / static_cast<double>(steps_expected);
}

RunRecord simulate(const Scenario& scenario, const ControllerSpec& controller,
                   const SimulationOptions& options) {
  scenario.validate();
  RunRecord rec;
  rec.label = scenario.label;
  rec.controller = std::holds_alternative<FuzzyParameters>(controller) ? "fuzzy" : "pid";
  rec.seed = options.seed;
  rec.digest = config_digest(canonical_text(scenario, controller, options.model));

  const std::size_t n = scenario.sample_count() - 1;
  rec.steps_expected = n;
  const ModelParams plant = scenario.plant_params(options.model);
  const AngleEnvelope envelope = scenario.plant_envelope();
  const double dt = scenario.dt;
  if (options.record_series) rec.samples.reserve(n + 1);

  // Running metrics so that metric-only runs match rmse()/iacs() on series.
  double sum_sq = 0.0;
  double effort = 0.0;
  double prev_effort_rate = 0.0;
  std::size_t count = 0;

  try {
    ClosedLoop loop(controller, options.model);
    HelicopterState state;
    for (std::size_t k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) * dt;
      const DesiredSample d = desired_trajectory(t);
      const ControlSignals sig = loop.step(state, {d.value, d.rate, d.value, d.rate}, dt);
      if (!std::isfinite(sig.inputs.u1) || !std::isfinite(sig.inputs.u2)) {
        throw NumericalError("simulate: non-finite control");
      }

      sum_sq += sig.roll_error.e * sig.roll_error.e + sig.yaw_error.e * sig.yaw_error.e +
                sig.pitch_error.e * sig.pitch_error.e;
      const double effort_rate = std::abs(sig.virtual_inputs.v1) +
                                 std::abs(sig.virtual_inputs.v2) + std::abs(sig.inputs.u2);
      if (count > 0) effort += 0.5 * dt * (effort_rate + prev_effort_rate);
      prev_effort_rate = effort_rate;
      ++count;

      if (options.record_series) {
        rec.samples.push_back({t, state, d.value, sig.pitch_desired, d.value, sig.roll_error.e,
                               sig.pitch_error.e, sig.yaw_error.e, sig.virtual_inputs.v1,
                               sig.virtual_inputs.v2, sig.inputs.u1, sig.inputs.u2});
      }
      if (k == n) break;

      AccelOffsets offsets;
      for (const Disturbance& dist : scenario.disturbances) {
        if (t < dist.onset) continue;
        switch (dist.axis) {
          case Axis::kRoll: offsets.roll += dist.magnitude; break;
          case Axis::kPitch: offsets.pitch += dist.magnitude; break;
          case Axis::kYaw: offsets.yaw += dist.magnitude; break;
        }
      }
      state = step(state, sig.inputs, plant, dt, offsets, envelope);
      if (diverged(state, options.divergence_limit)) throw NumericalError("simulate: diverged");
      rec.steps_completed = k + 1;
    }
  } catch (const NumericalError&) {
    rec.stable = false;
  } catch (const ParameterError&) {
    // The controller rejected its parameters (e.g. Kp = 0): nothing ran.
    rec.stable = false;
  }

  rec.rmse = count > 0 ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;
  rec.iacs = effort;
  return rec;
}

double rmse(std::span<const Sample> samples) {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (const Sample& s : samples) {
    sum += s.e_roll * s.e_roll + s.e_yaw * s.e_yaw + s.e_pitch * s.e_pitch;
  }
  return std::sqrt(sum / static_cast<double>(samples.size()));
}

double iacs(std::span<const Sample> samples) {
  double total = 0.0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const Sample& a = samples[k - 1];
    const Sample& b = samples[k];
    const double fa = std::abs(a.v1) + std::abs(a.v2) + std::abs(a.u2);
    const double fb = std::abs(b.v1) + std::abs(b.v2) + std::abs(b.u2);
    total += 0.5 * (b.t - a.t) * (fa + fb);
  }
  return total;
}

double settling_time(std::span<const Sample> samples, double tolerance) {
  if (!(tolerance > 0.0)) throw ParameterError("settling_time: tolerance must be > 0");
  double settled = std::numeric_limits<double>::infinity();
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    if (std::abs(it->state.roll - 1.0) > tolerance || std::abs(it->state.yaw - 1.0) > tolerance) break;
    settled = it->t;
  }
  return settled;
}

double objective(std::span<const double> pv, const Scenario& scenario, const ModelParams& nominal) {
  SimulationOptions opts;
  opts.model = nominal;
  opts.record_series = false;
  const RunRecord rec = simulate(scenario, decode(pv), opts);
  if (!rec.stable) return kInstabilityPenalty * (2.0 - rec.completed_fraction());
  return rec.rmse;
}

std::string config_digest(std::string_view canonical_text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string_view axis_name(Axis axis) {
  switch (axis) {
    case Axis::kRoll: return "roll";
    case Axis::kPitch: return "pitch";
    case Axis::kYaw: return "yaw";
  }
  return "?";
}

}  // namespace heliopt
