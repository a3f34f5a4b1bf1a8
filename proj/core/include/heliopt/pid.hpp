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

// Classical parallel-form PID baseline, wired through the same decoupling
// layer as the fuzzy controller.
#pragma once

#include "heliopt/decoupling.hpp"
#include "heliopt/dynamics.hpp"
#include "heliopt/fuzzy_controller.hpp"

namespace heliopt {

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double integral_limit = 1.0;  ///< clamp on the integral of e [unit of e * s]

  /// Throws ParameterError on negative gains or a non-positive limit.
  void validate() const;
};

struct PidOutput {
  double control = 0.0;
  double integral = 0.0;  ///< updated, clamped integral of e
};

/// u = kp e + ki clamp(integral of e) + kd e_dot. The integral advances by
/// the trapezoid rule using the previous error sample, then is clamped to
/// +-integral_limit (anti-windup).
PidOutput pid_step(const PidGains& gains, double e, double e_dot, double integral,
                   double previous_e, double dt);

class PidLoop {
 public:
  explicit PidLoop(const PidGains& gains);

  /// e and e_dot are set-point minus measurement.
  double update(double e, double e_dot, double dt);
  double integral() const { return integral_; }
  const PidGains& gains() const { return gains_; }

 private:
  PidGains gains_;
  double integral_ = 0.0;
  double previous_e_ = 0.0;
  bool primed_ = false;
};

struct PidControllerGains {
  PidGains roll{16.5, 4.0, 17.0, 0.4};
  PidGains yaw{4.5, 0.75, 7.0, 1.5};
  PidGains pitch{25.0, 0.0, 19.0, 1.0};
};

/// Mirrors FuzzyController::step with PID loops. The reported tracking errors
/// keep the measurement-minus-reference convention.
class PidController {
 public:
  explicit PidController(const PidControllerGains& gains, const AngleEnvelope& envelope = {});

  ControlSignals step(const HelicopterState& s, const Reference& ref, double dt);

  const PidLoop& roll_loop() const { return roll_; }
  const PidLoop& yaw_loop() const { return yaw_; }
  const PidLoop& pitch_loop() const { return pitch_; }

 private:
  PidLoop roll_;
  PidLoop yaw_;
  PidLoop pitch_;
  AngleEnvelope envelope_;
  SetpointDifferentiator pitch_ref_rate_;
};

}  // namespace heliopt
