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

// Nonlinear 3-DOF helicopter plant: roll (elevation), pitch and yaw (travel)
// driven by the collective force u1 = F_f + F_b and the differential force
// u2 = F_f - F_b.
#pragma once

#include <numbers>

namespace heliopt {

inline constexpr double kDegToRad = std::numbers::pi / 180.0;

/// Physical constants of the bench-top helicopter. Defaults are the values
/// of the reference rig.
struct ModelParams {
  double heli_mass = 1.426;       ///< M_h [kg]
  double counter_mass = 1.870;    ///< M_w [kg]
  double arm_length = 0.660;      ///< L_a, roll axis to helicopter body [m]
  double counter_arm = 0.470;     ///< L_w, roll axis to counterweight [m]
  double rotor_arm = 0.178;       ///< L_h, pitch axis to each motor [m]
  double roll_inertia = 1.0348;   ///< J_eps [kg m^2]
  double pitch_inertia = 0.0451;  ///< J_theta [kg m^2]
  double yaw_inertia = 1.0348;    ///< J_psi [kg m^2]
  double gravity = 9.81;          ///< g [m/s^2]

  /// Throws ParameterError unless every field is finite and strictly positive.
  void validate() const;
};

struct HelicopterState {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
  double roll_rate = 0.0;
  double pitch_rate = 0.0;
  double yaw_rate = 0.0;

  bool is_finite() const;
  friend bool operator==(const HelicopterState&, const HelicopterState&) = default;
};

/// Time derivative of HelicopterState, same layout: angle rates then angular
/// accelerations.
using StateDerivative = HelicopterState;

struct ControlInputs {
  double u1 = 0.0;  ///< collective force [N]
  double u2 = 0.0;  ///< differential force [N]
};

/// Additive angular-acceleration offsets, used to inject step disturbances.
struct AccelOffsets {
  double roll = 0.0;
  double pitch = 0.0;
  double yaw = 0.0;
};

/// Mechanical stops of the rig. Yaw is unconstrained.
struct AngleEnvelope {
  double pitch_min = -45.0 * kDegToRad;
  double pitch_max = 45.0 * kDegToRad;
  double roll_min = -27.5 * kDegToRad;
  double roll_max = 30.0 * kDegToRad;
};

/// g (M_h L_a - M_w L_w) cos(roll)
double gravity_roll_torque(const ModelParams& p, double roll);

StateDerivative state_derivative(const HelicopterState& s, const ControlInputs& u,
                                 const ModelParams& p, const AccelOffsets& offsets = {});

/// Roll dynamics after substituting the virtual inputs: the decoupled form
/// where roll, yaw and pitch are driven by v1, v2 and u2 independently.
StateDerivative decoupled_state_derivative(const HelicopterState& s, double v1, double v2,
                                           double u2, const ModelParams& p);

/// Saturates pitch and roll to the envelope. At an engaged stop the rate is
/// zeroed if it points further out of range.
HelicopterState clamp_angles(const HelicopterState& s, const AngleEnvelope& envelope = {});

/// One classical RK4 step with the inputs held over [t, t + dt], followed by
/// clamp_angles. Throws NumericalError if the result is not finite, and
/// ParameterError if dt <= 0.
HelicopterState step(const HelicopterState& s, const ControlInputs& u, const ModelParams& p,
                     double dt, const AccelOffsets& offsets = {},
                     const AngleEnvelope& envelope = {});

/// RK4 step without the envelope, for callers that need the raw integrator.
HelicopterState rk4_step(const HelicopterState& s, const ControlInputs& u, const ModelParams& p,
                         double dt, const AccelOffsets& offsets = {});

}  // namespace heliopt
