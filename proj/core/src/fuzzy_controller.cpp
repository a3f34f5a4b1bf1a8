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

#include "heliopt/fuzzy_controller.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "heliopt/errors.hpp"

namespace heliopt {

double mf_value(const GaussianMF& mf, double x) {
  const double d = (x - mf.center) / mf.sigma;
  return std::exp(-0.5 * d * d);
}

RuleBase RuleBase::symmetric(const std::array<double, 3>& error_centers,
                             const std::array<double, 3>& rate_centers, double sigma) {
  auto mirror = [sigma](std::array<double, 3> neg) {
    for (double& c : neg) c = -std::abs(c);
    std::sort(neg.begin(), neg.end());  // NL (most negative) first
    std::array<GaussianMF, kRuleCount> mfs;
    for (std::size_t i = 0; i < 3; ++i) {
      mfs[i] = {neg[i], sigma};
      mfs[kRuleCount - 1 - i] = {-neg[i], sigma};
    }
    mfs[3] = {0.0, sigma};
    return mfs;
  };
  return {mirror(error_centers), mirror(rate_centers)};
}

bool RuleBase::is_valid() const {
  auto check = [](const std::array<GaussianMF, kRuleCount>& mfs) {
    if (mfs[3].center != 0.0) return false;
    for (std::size_t i = 0; i < kRuleCount; ++i) {
      if (!(mfs[i].sigma > 0.0) || !std::isfinite(mfs[i].center)) return false;
      if (mfs[i].center != -mfs[kRuleCount - 1 - i].center) return false;
      if (i > 0 && mfs[i].center < mfs[i - 1].center) return false;
    }
    return true;
  };
  return check(error) && check(error_rate);
}

RuleVector firing_strengths(const RuleBase& rb, const TrackingError& err) {
  RuleVector f;
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    f[i] = mf_value(rb.error[i], err.e) * mf_value(rb.error_rate[i], err.e_dot);
  }
  return f;
}

RuleVector phi_hat(const RuleVector& f) {
  const double sum = std::accumulate(f.begin(), f.end(), 0.0);
  RuleVector out;
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    out.fill(1.0 / static_cast<double>(kRuleCount));
    return out;
  }
  std::transform(f.begin(), f.end(), out.begin(), [sum](double v) { return v / sum; });
  return out;
}

Sym2 solve_lyapunov(double kp, double kd, const Sym2& q) {
  if (!(kp > 0.0) || !(kd > 0.0) || !std::isfinite(kp) || !std::isfinite(kd)) {
    throw ParameterError("solve_lyapunov: kp and kd must be > 0 (A not Hurwitz)");
  }
  if (!q.is_positive_definite()) {
    throw ParameterError("solve_lyapunov: Q must be positive definite");
  }
  // Entries of A^T P + P A = -Q:
  //   (1,1): -2 kp b                 = -q.a
  //   (2,2):  2 b - 2 kd c           = -q.c
  //   (1,2):  a - kd b - kp c        = -q.b
  Sym2 p;
  p.b = q.a / (2.0 * kp);
  p.c = (2.0 * p.b + q.c) / (2.0 * kd);
  p.a = kd * p.b + kp * p.c - q.b;
  return p;
}

double lyapunov_residual(double kp, double kd, const Sym2& p, const Sym2& q) {
  const double r11 = -2.0 * kp * p.b + q.a;
  const double r12 = p.a - kd * p.b - kp * p.c + q.b;
  const double r22 = 2.0 * p.b - 2.0 * kd * p.c + q.c;
  return std::max({std::abs(r11), std::abs(r12), std::abs(r22)});
}

AdaptiveFuzzyLoop::AdaptiveFuzzyLoop(const LoopConfig& config)
    : config_(config), p_(solve_lyapunov(config.kp, config.kd, config.q)) {
  if (!config_.rules.is_valid()) throw ParameterError("AdaptiveFuzzyLoop: invalid rule base");
  for (double g : config_.gamma) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw ParameterError("AdaptiveFuzzyLoop: gamma entries must be finite and >= 0");
    }
  }
  reset_weights();
}

void AdaptiveFuzzyLoop::reset_weights() {
  weights_.fill(0.0);
  if (config_.weight_init != WeightInit::kLinearFeedback) return;
  const double scale = config_.eta * config_.output_gain;
  if (scale == 0.0) return;
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    weights_[i] = -(config_.kp * config_.rules.error[i].center +
                    config_.kd * config_.rules.error_rate[i].center) /
                  scale;
  }
}

RuleVector AdaptiveFuzzyLoop::phi(const TrackingError& err) const {
  return phi_hat(firing_strengths(config_.rules, err));
}

double AdaptiveFuzzyLoop::control_output(const RuleVector& phi) const {
  return config_.output_gain * std::inner_product(phi.begin(), phi.end(), weights_.begin(), 0.0);
}

void AdaptiveFuzzyLoop::adapt_weights(const RuleVector& phi, const TrackingError& err,
                                      double dt) {
  // B^T P E with B = (0, eta)^T picks the second row of P.
  const double btpe = config_.eta * (p_.b * err.e + p_.c * err.e_dot);
  if (btpe == 0.0) return;
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    weights_[i] -= dt * config_.gamma[i] * phi[i] * btpe;
    if (!std::isfinite(weights_[i])) throw NumericalError("adapt_weights: non-finite weight");
  }
}

double AdaptiveFuzzyLoop::update(const TrackingError& err, double dt) {
  const RuleVector ph = phi(err);
  const double out = control_output(ph);
  adapt_weights(ph, err, dt);
  return out;
}

EtaValues eta_values(const ModelParams& p) {
  return {p.arm_length / p.roll_inertia, p.arm_length / p.yaw_inertia,
          p.rotor_arm / p.pitch_inertia};
}

double SetpointDifferentiator::update(double value, double dt) {
  const double rate = primed_ ? (value - previous_) / dt : 0.0;
  previous_ = value;
  primed_ = true;
  return rate;
}

FuzzyController::FuzzyController(const LoopConfig& roll, const LoopConfig& yaw,
                                 const LoopConfig& pitch, const AngleEnvelope& envelope)
    : roll_(roll), yaw_(yaw), pitch_(pitch), envelope_(envelope) {}

ControlSignals FuzzyController::step(const HelicopterState& s, const Reference& ref, double dt) {
  if (!(dt > 0.0)) throw ParameterError("FuzzyController::step: dt must be > 0");
  ControlSignals out;
  out.roll_error = {s.roll - ref.roll, s.roll_rate - ref.roll_rate};
  out.yaw_error = {s.yaw - ref.yaw, s.yaw_rate - ref.yaw_rate};
  out.virtual_inputs = {roll_.update(out.roll_error, dt), yaw_.update(out.yaw_error, dt)};

  out.pitch_desired = desired_pitch(out.virtual_inputs, s.roll, envelope_);
  out.inputs.u1 = collective_input(out.virtual_inputs, s.roll);
  const double pitch_desired_rate = pitch_ref_rate_.update(out.pitch_desired, dt);
  out.pitch_error = {s.pitch - out.pitch_desired, s.pitch_rate - pitch_desired_rate};
  out.inputs.u2 = pitch_.update(out.pitch_error, dt);
  return out;
}

}  // namespace heliopt
