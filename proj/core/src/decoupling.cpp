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

#include "heliopt/decoupling.hpp"

#include <algorithm>
#include <cmath>

namespace heliopt {
namespace {

double sign_of(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

VirtualInputs actual_to_virtual(double u1, double pitch, double roll) {
  return {std::cos(pitch) * u1, std::cos(roll) * std::sin(pitch) * u1};
}

double desired_pitch(const VirtualInputs& v, double roll, const AngleEnvelope& envelope) {
  if (v.v1 == 0.0 && v.v2 == 0.0) return 0.0;
  // atan(v2 / (cos(roll) v1)) without the division; folding sign(v1) into
  // the numerator keeps the result in the principal branch.
  const double lift_sign = v.v1 < 0.0 ? -1.0 : 1.0;
  const double theta = std::atan2(lift_sign * v.v2, std::cos(roll) * std::abs(v.v1));
  return std::clamp(theta, envelope.pitch_min, envelope.pitch_max);
}

double collective_input(const VirtualInputs& v, double roll) {
  const double s = v.v1 != 0.0 ? sign_of(v.v1) : sign_of(v.v2);
  if (s == 0.0) return 0.0;
  const double yaw_part = v.v2 / std::cos(roll);
  return s * std::hypot(v.v1, yaw_part);
}

}  // namespace heliopt
