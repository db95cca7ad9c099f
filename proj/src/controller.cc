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

#include "slipkin/controller.h"

#include <cmath>

#include "slipkin/errors.h"

namespace slipkin {

void ControllerGains::Validate(bool allow_zero_rates) const {
  auto positive = [](double g) { return std::isfinite(g) && g > 0.0; };
  if (!positive(k1) || !positive(k2) || !positive(k3)) {
    throw DomainError("gains k1, k2, k3 must be positive");
  }
  auto rate_ok = [&](double g) {
    return std::isfinite(g) && (g > 0.0 || (allow_zero_rates && g == 0.0));
  };
  if (!rate_ok(gamma1) || !rate_ok(gamma2)) {
    throw DomainError("adaptation rates gamma1, gamma2 must be positive");
  }
}

PoseError ComputePoseError(const RobotPose& reference,
                           const RobotPose& actual) {
  const double dx = reference.x - actual.x;
  const double dy = reference.y - actual.y;
  const double c = std::cos(actual.theta);
  const double s = std::sin(actual.theta);
  return {c * dx + s * dy, -s * dx + c * dy, reference.theta - actual.theta};
}

BodyVelocity ControlLaw(const PoseError& e, const ReferenceInput& reference,
                        const ControllerGains& gains) {
  const double omega_c =
      reference.omega +
      0.5 * reference.v *
          (gains.k2 * (e.e2 + gains.k3 * e.e3) + std::sin(e.e3) / gains.k3);
  const double v_c = reference.v * std::cos(e.e3) -
                     gains.k3 * e.e3 * omega_c + gains.k1 * e.e1;
  return {v_c, omega_c};
}

EstimateRates UpdateRule(const PoseError& e, const BodyVelocity& eta_c,
                         const ControllerGains& gains,
                         const RobotGeometry& geom) {
  const double b = geom.wheel_spacing;
  const double left_speed = eta_c.v - 0.5 * b * eta_c.omega;
  const double right_speed = eta_c.v + 0.5 * b * eta_c.omega;
  // Terms shared by both brackets.
  const double coupling =
      (e.e1 / b + gains.k3 / b) * (e.e2 + gains.k3 * e.e3) +
      std::sin(e.e3) / (b * gains.k2);
  const double left_bracket = (e.e2 / b + 0.5) * e.e1 - coupling;
  const double right_bracket = -(e.e2 / b - 0.5) * e.e1 + coupling;
  return {gains.gamma1 * left_speed * left_bracket,
          gains.gamma2 * right_speed * right_bracket};
}

WheelSpeeds EffectiveInput(const BodyVelocity& eta_c,
                           const SlipEstimates& estimates,
                           const RobotGeometry& geom) {
  return BodyToWheelPositive(eta_c, estimates.a_left_hat,
                             estimates.a_right_hat, geom);
}

double LyapunovV(const PoseError& e, const ControllerGains& gains) {
  const double s = e.e2 + gains.k3 * e.e3;
  return 0.5 * e.e1 * e.e1 + 0.5 * s * s + (1.0 - std::cos(e.e3)) / gains.k2;
}

double LyapunovVa(const AugmentedError& e, double a_left, double a_right,
                  const ControllerGains& gains) {
  return LyapunovV(e.pose(), gains) +
         e.a_left_tilde * e.a_left_tilde / (2.0 * gains.gamma1 * a_left) +
         e.a_right_tilde * e.a_right_tilde / (2.0 * gains.gamma2 * a_right);
}

double LyapunovVaRate(const PoseError& e, double v_ref,
                      const ControllerGains& gains) {
  const double s = e.e2 + gains.k3 * e.e3;
  const double sin_e3 = std::sin(e.e3);
  return -gains.k1 * e.e1 * e.e1 - 0.5 * v_ref * gains.k2 * gains.k3 * s * s -
         v_ref / (2.0 * gains.k2 * gains.k3) * sin_e3 * sin_e3;
}

double DecayW(const AugmentedError& e, double mu,
              const ControllerGains& gains) {
  const double s = e.e2 + gains.k3 * e.e3;
  const double sin_e3 = std::sin(e.e3);
  return gains.k1 * e.e1 * e.e1 + 0.5 * gains.k2 * gains.k3 * mu * s * s +
         mu / (2.0 * gains.k2 * gains.k3) * sin_e3 * sin_e3;
}

}  // namespace slipkin
