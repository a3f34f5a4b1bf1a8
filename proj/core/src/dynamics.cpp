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

#include "heliopt/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heliopt/errors.hpp"

namespace heliopt {
namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw ParameterError(std::string("ModelParams.") + name + " must be finite and > 0");
  }
}

HelicopterState axpy(const HelicopterState& s, double h, const StateDerivative& d) {
  return {s.roll + h * d.roll,           s.pitch + h * d.pitch,
          s.yaw + h * d.yaw,             s.roll_rate + h * d.roll_rate,
          s.pitch_rate + h * d.pitch_rate, s.yaw_rate + h * d.yaw_rate};
}

}  // namespace

void ModelParams::validate() const {
  require_positive(heli_mass, "heli_mass");
  require_positive(counter_mass, "counter_mass");
  require_positive(arm_length, "arm_length");
  require_positive(counter_arm, "counter_arm");
  require_positive(rotor_arm, "rotor_arm");
  require_positive(roll_inertia, "roll_inertia");
  require_positive(pitch_inertia, "pitch_inertia");
  require_positive(yaw_inertia, "yaw_inertia");
  require_positive(gravity, "gravity");
}

bool HelicopterState::is_finite() const {
  return std::isfinite(roll) && std::isfinite(pitch) && std::isfinite(yaw) &&
         std::isfinite(roll_rate) && std::isfinite(pitch_rate) && std::isfinite(yaw_rate);
}

double gravity_roll_torque(const ModelParams& p, double roll) {
  return p.gravity * (p.heli_mass * p.arm_length - p.counter_mass * p.counter_arm) *
         std::cos(roll);
}

StateDerivative state_derivative(const HelicopterState& s, const ControlInputs& u,
                                 const ModelParams& p, const AccelOffsets& offsets) {
  StateDerivative d;
  d.roll = s.roll_rate;
  d.pitch = s.pitch_rate;
  d.yaw = s.yaw_rate;
  d.roll_rate = (gravity_roll_torque(p, s.roll) + p.arm_length * std::cos(s.pitch) * u.u1) /
                    p.roll_inertia +
                offsets.roll;
  d.pitch_rate = p.rotor_arm * u.u2 / p.pitch_inertia + offsets.pitch;
  d.yaw_rate =
      p.arm_length * std::cos(s.roll) * std::sin(s.pitch) * u.u1 / p.yaw_inertia + offsets.yaw;
  return d;
}

StateDerivative decoupled_state_derivative(const HelicopterState& s, double v1, double v2,
                                           double u2, const ModelParams& p) {
  StateDerivative d;
  d.roll = s.roll_rate;
  d.pitch = s.pitch_rate;
  d.yaw = s.yaw_rate;
  d.roll_rate = (gravity_roll_torque(p, s.roll) + p.arm_length * v1) / p.roll_inertia;
  d.pitch_rate = p.rotor_arm * u2 / p.pitch_inertia;
  d.yaw_rate = p.arm_length * v2 / p.yaw_inertia;
  return d;
}

HelicopterState clamp_angles(const HelicopterState& s, const AngleEnvelope& envelope) {
  HelicopterState out = s;
  if (out.pitch > envelope.pitch_max) {
    out.pitch = envelope.pitch_max;
    out.pitch_rate = std::min(out.pitch_rate, 0.0);
  } else if (out.pitch < envelope.pitch_min) {
    out.pitch = envelope.pitch_min;
    out.pitch_rate = std::max(out.pitch_rate, 0.0);
  }
  if (out.roll > envelope.roll_max) {
    out.roll = envelope.roll_max;
    out.roll_rate = std::min(out.roll_rate, 0.0);
  } else if (out.roll < envelope.roll_min) {
    out.roll = envelope.roll_min;
    out.roll_rate = std::max(out.roll_rate, 0.0);
  }
  return out;
}

HelicopterState rk4_step(const HelicopterState& s, const ControlInputs& u, const ModelParams& p,
                         double dt, const AccelOffsets& offsets) {
  if (!(dt > 0.0)) throw ParameterError("step: dt must be > 0");
  const StateDerivative k1 = state_derivative(s, u, p, offsets);
  const StateDerivative k2 = state_derivative(axpy(s, 0.5 * dt, k1), u, p, offsets);
  const StateDerivative k3 = state_derivative(axpy(s, 0.5 * dt, k2), u, p, offsets);
  const StateDerivative k4 = state_derivative(axpy(s, dt, k3), u, p, offsets);
  const double h6 = dt / 6.0;
  HelicopterState next = s;
  next.roll += h6 * (k1.roll + 2.0 * k2.roll + 2.0 * k3.roll + k4.roll);
  next.pitch += h6 * (k1.pitch + 2.0 * k2.pitch + 2.0 * k3.pitch + k4.pitch);
  next.yaw += h6 * (k1.yaw + 2.0 * k2.yaw + 2.0 * k3.yaw + k4.yaw);
  next.roll_rate += h6 * (k1.roll_rate + 2.0 * k2.roll_rate + 2.0 * k3.roll_rate + k4.roll_rate);
  next.pitch_rate +=
      h6 * (k1.pitch_rate + 2.0 * k2.pitch_rate + 2.0 * k3.pitch_rate + k4.pitch_rate);
  next.yaw_rate += h6 * (k1.yaw_rate + 2.0 * k2.yaw_rate + 2.0 * k3.yaw_rate + k4.yaw_rate);
  return next;
}

HelicopterState step(const HelicopterState& s, const ControlInputs& u, const ModelParams& p,
                     double dt, const AccelOffsets& offsets, const AngleEnvelope& envelope) {
  const HelicopterState next = clamp_angles(rk4_step(s, u, p, dt, offsets), envelope);
  if (!next.is_finite()) throw NumericalError("step: non-finite state");
  return next;
}

}  // namespace heliopt
