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

#ifndef SLIPKIN_KINEMATICS_H_
#define SLIPKIN_KINEMATICS_H_

namespace slipkin {

// Wheel spacing b and wheel radius r, both in meters.
struct RobotGeometry {
  double wheel_spacing = 0.1624;
  double wheel_radius = 0.0825;

  // Throws DomainError unless both lengths are positive and finite.
  void Validate() const;
};

// Planar pose in the inertial frame. Heading is kept unwrapped.
struct RobotPose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Forward speed (m/s) and yaw rate (rad/s).
struct BodyVelocity {
  double v = 0.0;
  double omega = 0.0;
};

// Left and right wheel angular velocities (rad/s).
struct WheelSpeeds {
  double left = 0.0;
  double right = 0.0;
};

// Time derivative of a RobotPose.
struct PoseRate {
  double x_dot = 0.0;
  double y_dot = 0.0;
  double theta_dot = 0.0;
};

// Longitudinal slip parameters a = 1/(1 - i) >= 1, lateral slip
// sigma = tan(alpha), and the time derivatives of the longitudinal terms.
struct SlipState {
  double a_left = 1.0;
  double a_right = 1.0;
  double sigma = 0.0;
  double a_left_dot = 0.0;
  double a_right_dot = 0.0;

  // Throws DomainError if a_left or a_right is below one or not finite.
  void Validate() const;
};

// q_dot = S(q) eta.
PoseRate PoseRateNoSlip(const RobotPose& pose, const BodyVelocity& eta);

// q_dot = S_a(q) eta, the lateral-slip kinematics.
PoseRate PoseRateWithLateralSlip(const RobotPose& pose,
                                 const BodyVelocity& eta, double sigma);

// eta = Phi xi for the true slip parameters in `slip`.
BodyVelocity WheelToBody(const WheelSpeeds& xi, const SlipState& slip,
                         const RobotGeometry& geom);

// xi = Phi^{-1} eta. Requires a_left, a_right >= 1.
WheelSpeeds BodyToWheel(const BodyVelocity& eta, double a_left,
                        double a_right, const RobotGeometry& geom);

// Same matrix as BodyToWheel but only requires positive parameters. Used for
// slip estimates, which may transiently fall below one.
WheelSpeeds BodyToWheelPositive(const BodyVelocity& eta, double a_left,
                                double a_right, const RobotGeometry& geom);

// a = 1/(1 - i) for a slip factor i in [0, 1).
double SlipFactorToParameter(double slip_factor);

}  // namespace slipkin

#endif  // SLIPKIN_KINEMATICS_H_
