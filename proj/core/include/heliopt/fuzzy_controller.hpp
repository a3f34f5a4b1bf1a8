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

// Adaptive fuzzy attitude controller.
//
// Each axis runs one AdaptiveFuzzyLoop: two inputs (tracking error e and its
// rate), seven Gaussian membership functions per input paired rule-by-rule,
// normalized firing strengths Phi, singleton consequents W and output
// K * Phi^T W. The consequents follow the Lyapunov-based adaptation law
// dW/dt = -Gamma Phi B^T P E with B = (0, eta)^T and P solving
// A^T P + P A = -Q for A = [[0, 1], [-Kp, -Kd]].
#pragma once

#include <array>
#include <cstddef>

#include "heliopt/decoupling.hpp"
#include "heliopt/dynamics.hpp"

namespace heliopt {

inline constexpr std::size_t kRuleCount = 7;
using RuleVector = std::array<double, kRuleCount>;

/// Labels in rule order: NL, NM, NS, Z, PS, PM, PL.
enum class Label : std::size_t { kNL = 0, kNM, kNS, kZ, kPS, kPM, kPL };

struct GaussianMF {
  double center = 0.0;
  double sigma = 1.0;
};

/// exp(-(x - c)^2 / (2 sigma^2))
double mf_value(const GaussianMF& mf, double x);

struct RuleBase {
  std::array<GaussianMF, kRuleCount> error;
  std::array<GaussianMF, kRuleCount> error_rate;

  /// Builds an odd-symmetric rule base from the three negative-side centers
  /// of each input (NL, NM, NS). Magnitudes are sorted so that
  /// NL <= NM <= NS <= Z = 0 and the positive side is mirrored.
  static RuleBase symmetric(const std::array<double, 3>& error_centers,
                            const std::array<double, 3>& rate_centers, double sigma = 1.0);

  /// Odd symmetry, c(Z) = 0, nondecreasing centers and sigma > 0.
  bool is_valid() const;
};

struct TrackingError {
  double e = 0.0;
  double e_dot = 0.0;
};

/// Rule i fires with mu(error[i], e) * mu(error_rate[i], e_dot).
RuleVector firing_strengths(const RuleBase& rb, const TrackingError& err);

/// Normalized firing strengths. An all-zero (or non-finite) sum, which the
/// Gaussian memberships cannot produce for finite input, yields 1/7 each.
RuleVector phi_hat(const RuleVector& f);

/// Symmetric 2x2 matrix [[a, b], [b, c]].
struct Sym2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static constexpr Sym2 identity() { return {1.0, 0.0, 1.0}; }
  bool is_positive_definite() const { return a > 0.0 && a * c - b * b > 0.0; }
  friend bool operator==(const Sym2&, const Sym2&) = default;
};

/// Closed-form P for A^T P + P A = -Q with A = [[0, 1], [-kp, -kd]].
/// Throws ParameterError if kp <= 0, kd <= 0 or Q is not positive definite.
Sym2 solve_lyapunov(double kp, double kd, const Sym2& q = Sym2::identity());

/// max-abs entry of A^T P + P A + Q.
double lyapunov_residual(double kp, double kd, const Sym2& p, const Sym2& q);

/// How the consequents start. kLinearFeedback seeds each singleton with the
/// ideal linear control -(Kp c_e + Kd c_edot) / (eta K) evaluated at the
/// rule's centers, so the untrained map already realises the error dynamics
/// of A; adaptation then corrects it.
enum class WeightInit { kZero, kLinearFeedback };

struct LoopConfig {
  RuleBase rules;
  RuleVector gamma{};       ///< diagonal of Gamma
  double kp = 1.0;
  double kd = 1.0;
  double eta = 1.0;         ///< eta-hat, control effectiveness estimate
  double output_gain = 1.0; ///< K_eps / K_psi / K_theta
  Sym2 q = Sym2::identity();
  WeightInit weight_init = WeightInit::kZero;
};

class AdaptiveFuzzyLoop {
 public:
  /// Solves the Lyapunov equation once; throws ParameterError on invalid
  /// kp/kd, negative gamma entries or an invalid rule base.
  explicit AdaptiveFuzzyLoop(const LoopConfig& config);

  RuleVector phi(const TrackingError& err) const;

  /// output_gain * Phi^T W
  double control_output(const RuleVector& phi) const;

  /// Explicit Euler step of the adaptation law. Throws NumericalError if a
  /// weight becomes non-finite.
  void adapt_weights(const RuleVector& phi, const TrackingError& err, double dt);

  /// Output for the current weights, then one adaptation step.
  double update(const TrackingError& err, double dt);

  const LoopConfig& config() const { return config_; }
  const Sym2& lyapunov_matrix() const { return p_; }
  const RuleVector& weights() const { return weights_; }
  void set_weights(const RuleVector& w) { weights_ = w; }
  void reset_weights();

 private:
  LoopConfig config_;
  Sym2 p_;
  RuleVector weights_{};
};

/// eta for each axis: L_a / J_eps, L_a / J_psi, L_h / J_theta.
struct EtaValues {
  double roll = 0.0;
  double yaw = 0.0;
  double pitch = 0.0;
};
EtaValues eta_values(const ModelParams& p);

/// Desired roll/yaw and their first derivatives at one instant.
struct Reference {
  double roll = 0.0;
  double roll_rate = 0.0;
  double yaw = 0.0;
  double yaw_rate = 0.0;
};

/// Everything a controller produced during one control step.
struct ControlSignals {
  ControlInputs inputs;
  VirtualInputs virtual_inputs;
  double pitch_desired = 0.0;
  TrackingError roll_error;
  TrackingError pitch_error;
  TrackingError yaw_error;
};

/// Backward-difference derivative of the pitch set-point; the first sample
/// has zero rate.
class SetpointDifferentiator {
 public:
  double update(double value, double dt);
  void reset() { primed_ = false; }

 private:
  bool primed_ = false;
  double previous_ = 0.0;
};

/// One adaptive loop per axis, wired through the decoupling layer.
class FuzzyController {
 public:
  FuzzyController(const LoopConfig& roll, const LoopConfig& yaw, const LoopConfig& pitch,
                  const AngleEnvelope& envelope = {});

  ControlSignals step(const HelicopterState& s, const Reference& ref, double dt);

  const AdaptiveFuzzyLoop& roll_loop() const { return roll_; }
  const AdaptiveFuzzyLoop& yaw_loop() const { return yaw_; }
  const AdaptiveFuzzyLoop& pitch_loop() const { return pitch_; }

 private:
  AdaptiveFuzzyLoop roll_;
  AdaptiveFuzzyLoop yaw_;
  AdaptiveFuzzyLoop pitch_;
  AngleEnvelope envelope_;
  SetpointDifferentiator pitch_ref_rate_;
};

}  // namespace heliopt
