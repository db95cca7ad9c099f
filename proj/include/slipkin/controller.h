// Copyright 2026 The slipkin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLIPKIN_CONTROLLER_H_
#define SLIPKIN_CONTROLLER_H_

#include "slipkin/kinematics.h"
#include "slipkin/reference.h"

namespace slipkin {

// Reference-minus-actual pose expressed in the robot body frame.
struct PoseError {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
};

// Pose error plus slip-estimate errors a_tilde = a_hat - a.
struct AugmentedError {
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  double a_left_tilde = 0.0;
  double a_right_tilde = 0.0;

  PoseError pose() const { return {e1, e2, e3}; }
};

struct ControllerGains {
  double k1 = 1.44;
  double k2 = 10.0;
  double k3 = 1.83;
  double gamma1 = 3.0;
  double gamma2 = 3.0;

  // k4 = 1 + k2 k3^2.
  double K4() const { return 1.0 + k2 * k3 * k3; }

  // Throws DomainError unless k1, k2, k3 > 0 and the adaptation rates are
  // positive (or non-negative when `allow_zero_rates`).
  void Validate(bool allow_zero_rates = false) const;
};

struct SlipEstimates {
  double a_left_hat = 1.0;
  double a_right_hat = 1.0;
};

struct EstimateRates {
  double a_left_hat_dot = 0.0;
  double a_right_hat_dot = 0.0;
};

PoseError ComputePoseError(const RobotPose& reference, const RobotPose& actual);

// Kinematic tracking law. omega_c is formed first; v_c uses it.
BodyVelocity ControlLaw(const PoseError& e, const ReferenceInput& reference,
                        const ControllerGains& gains);

// Adaptation law for the slip estimates, driven by the pose error and the
// commanded body velocity.
EstimateRates UpdateRule(const PoseError& e, const BodyVelocity& eta_c,
                         const ControllerGains& gains,
                         const RobotGeometry& geom);

// Wheel command xi = Phi_hat^{-1} eta_c. Estimates must be positive.
WheelSpeeds EffectiveInput(const BodyVelocity& eta_c,
                           const SlipEstimates& estimates,
                           const RobotGeometry& geom);

// V = e1^2/2 + (e2 + k3 e3)^2/2 + (1 - cos e3)/k2.
double LyapunovV(const PoseError& e, const ControllerGains& gains);

// V_a = V + a_l_tilde^2/(2 gamma1 a_l) + a_r_tilde^2/(2 gamma2 a_r).
double LyapunovVa(const AugmentedError& e, double a_left, double a_right,
                  const ControllerGains& gains);

// Closed-form dV_a/dt along the constant-slip closed loop:
// -k1 e1^2 - (v_ref/2) k2 k3 (e2 + k3 e3)^2 - v_ref/(2 k2 k3) sin^2 e3.
double LyapunovVaRate(const PoseError& e, double v_ref,
                      const ControllerGains& gains);

// W = k1 e1^2 + (k2 k3 mu/2)(e2 + k3 e3)^2 + mu/(2 k2 k3) sin^2 e3.
double DecayW(const AugmentedError& e, double mu, const ControllerGains& gains);

}  // namespace slipkin

#endif  // SLIPKIN_CONTROLLER_H_
