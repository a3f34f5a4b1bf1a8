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

// Virtual-input decoupling layer. The roll and yaw loops command v1 and v2;
// this layer turns them into the physical collective force u1 and the pitch
// set-point that the pitch loop has to realise.
#pragma once

#include "heliopt/dynamics.hpp"

namespace heliopt {

struct VirtualInputs {
  double v1 = 0.0;  ///< roll-channel virtual force [N]
  double v2 = 0.0;  ///< yaw-channel virtual force [N]
};

/// v1 = cos(pitch) u1, v2 = cos(roll) sin(pitch) u1
VirtualInputs actual_to_virtual(double u1, double pitch, double roll);

/// Pitch that realises (v1, v2): atan(v2 / (cos(roll) v1)), saturated to
/// [pitch_min, pitch_max]. The quotient's sign is kept (the angle lives in
/// (-90, 90) degrees) so that a negative lift command yields a small pitch
/// paired with a negative u1 rather than a flipped rotor. v1 = 0 maps to the
/// stop on the side of v2; v1 = v2 = 0 maps to 0.
double desired_pitch(const VirtualInputs& v, double roll, const AngleEnvelope& envelope = {});

/// u1 = S sqrt(v1^2 + (v2 / cos(roll))^2), S = sign(v1), falling back to
/// sign(v2) when v1 = 0. Requires |roll| < 90 degrees.
double collective_input(const VirtualInputs& v, double roll);

}  // namespace heliopt
