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

#include "heliopt/pid.hpp"

#include <algorithm>
#include <cmath>

#include "heliopt/errors.hpp"

namespace heliopt {

void PidGains::validate() const {
  if (!(kp >= 0.0) || !(ki >= 0.0) || !(kd >= 0.0)) {
    throw ParameterError("PidGains: gains must be >= 0");
  }
  if (!(integral_limit > 0.0)) throw ParameterError("PidGains: integral_limit must be > 0");
}

PidOutput pid_step(const PidGains& gains, double e, double e_dot, double integral,
                   double previous_e, double dt) {
  if (!(dt > 0.0)) throw ParameterError("pid_step: dt must be > 0");
  PidOutput out;
  out.integral = std::clamp(integral + 0.5 * dt * (e + previous_e), -gains.integral_limit,
                            gains.integral_limit);
  out.control = gains.kp * e + gains.ki * out.integral + gains.kd * e_dot;
  return out;
}

PidLoop::PidLoop(const PidGains& gains) : gains_(gains) { gains_.validate(); }

double PidLoop::update(double e, double e_dot, double dt) {
  // The first sample has no predecessor; treat it as the left end of the
  // first trapezoid so that a zero-length history contributes nothing.
  const double prev = primed_ ? previous_e_ : e;
  const PidOutput out = pid_step(gains_, e, e_dot, primed_ ? integral_ : 0.0, prev, dt);
  integral_ = out.integral;
  previous_e_ = e;
  primed_ = true;
  return out.control;
}

PidController::PidController(const PidControllerGains& gains, const AngleEnvelope& envelope)
    : roll_(gains.roll), yaw_(gains.yaw), pitch_(gains.pitch), envelope_(envelope) {}

ControlSignals PidController::step(const HelicopterState& s, const Reference& ref, double dt) {
  if (!(dt > 0.0)) throw ParameterError("PidController::step: dt must be > 0");
  ControlSignals out;
  out.roll_error = {s.roll - ref.roll, s.roll_rate - ref.roll_rate};
  out.yaw_error = {s.yaw - ref.yaw, s.yaw_rate - ref.yaw_rate};
  out.virtual_inputs = {roll_.update(-out.roll_error.e, -out.roll_error.e_dot, dt),
                        yaw_.update(-out.yaw_error.e, -out.yaw_error.e_dot, dt)};

  out.pitch_desired = desired_pitch(out.virtual_inputs, s.roll, envelope_);
  out.inputs.u1 = collective_input(out.virtual_inputs, s.roll);
  const double pitch_desired_rate = pitch_ref_rate_.update(out.pitch_desired, dt);
  out.pitch_error = {s.pitch - out.pitch_desired, s.pitch_rate - pitch_desired_rate};
  out.inputs.u2 = pitch_.update(-out.pitch_error.e, -out.pitch_error.e_dot, dt);
  return out;
}

}  // namespace heliopt
