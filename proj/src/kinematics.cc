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

#include "slipkin/kinematics.h"

#include <cmath>
#include <string>

#include "slipkin/errors.h"

namespace slipkin {
namespace {

void CheckSlipParameter(double a, const char* name) {
  if (!std::isfinite(a) || a < 1.0) {
    throw DomainError(std::string(name) + " must be >= 1, got " +
                      std::to_string(a));
  }
}

}  // namespace

void RobotGeometry::Validate() const {
  if (!std::isfinite(wheel_spacing) || wheel_spacing <= 0.0) {
    throw DomainError("wheel spacing b must be positive");
  }
  if (!std::isfinite(wheel_radius) || wheel_radius <= 0.0) {
    throw DomainError("wheel radius r must be positive");
  }
}

void SlipState::Validate() const {
  CheckSlipParameter(a_left, "a_l");
  CheckSlipParameter(a_right, "a_r");
  if (!std::isfinite(sigma)) throw DomainError("sigma must be finite");
}

PoseRate PoseRateNoSlip(const RobotPose& pose, const BodyVelocity& eta) {
  return {eta.v * std::cos(pose.theta), eta.v * std::sin(pose.theta),
          eta.omega};
}

PoseRate PoseRateWithLateralSlip(const RobotPose& pose,
                                 const BodyVelocity& eta, double sigma) {
  const double c = std::cos(pose.theta);
  const double s = std::sin(pose.theta);
  return {eta.v * (c + sigma * s), eta.v * (s - sigma * c), eta.omega};
}

BodyVelocity WheelToBody(const WheelSpeeds& xi, const SlipState& slip,
                         const RobotGeometry& geom) {
  CheckSlipParameter(slip.a_left, "a_l");
  CheckSlipParameter(slip.a_right, "a_r");
  const double left = xi.left / slip.a_left;
  const double right = xi.right / slip.a_right;
  const double r = geom.wheel_radius;
  return {0.5 * r * (left + right), r * (right - left) / geom.wheel_spacing};
}

WheelSpeeds BodyToWheel(const BodyVelocity& eta, double a_left,
                        double a_right, const RobotGeometry& geom) {
  CheckSlipParameter(a_left, "a_l");
  CheckSlipParameter(a_right, "a_r");
  return BodyToWheelPositive(eta, a_left, a_right, geom);
}

WheelSpeeds BodyToWheelPositive(const BodyVelocity& eta, double a_left,
                                double a_right, const RobotGeometry& geom) {
  if (!(a_left > 0.0) || !(a_right > 0.0)) {
    throw DomainError("slip estimates must be positive");
  }
  const double b_omega = geom.wheel_spacing * eta.omega;
  const double inv_2r = 0.5 / geom.wheel_radius;
  return {a_left * (2.0 * eta.v - b_omega) * inv_2r,
          a_right * (2.0 * eta.v + b_omega) * inv_2r};
}

double SlipFactorToParameter(double slip_factor) {
  if (!(slip_factor >= 0.0 && slip_factor < 1.0)) {
    throw DomainError("slip factor must lie in [0, 1), got " +
                      std::to_string(slip_factor));
  }
  return 1.0 / (1.0 - slip_factor);
}

}  // namespace slipkin
