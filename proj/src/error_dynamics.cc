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

#include "slipkin/error_dynamics.h"

#include <cmath>

namespace slipkin {
namespace {

// Shorthand quantities shared by the nominal and vanishing terms.
struct Auxiliary {
  BodyVelocity command;
  double right_speed;  // v_c + (b/2) omega_c
  double left_speed;   // v_c - (b/2) omega_c
  double ratio_right;  // a_r_tilde / a_r
  double ratio_left;   // a_l_tilde / a_l
};

Auxiliary MakeAuxiliary(const AugmentedError& e,
                        const ReferenceInput& reference, const SlipState& slip,
                        const ControllerGains& gains,
                        const RobotGeometry& geom) {
  Auxiliary aux;
  aux.command = ControlLaw(e.pose(), reference, gains);
  const double half_b = 0.5 * geom.wheel_spacing;
  aux.right_speed = aux.command.v + half_b * aux.command.omega;
  aux.left_speed = aux.command.v - half_b * aux.command.omega;
  aux.ratio_right = e.a_right_tilde / slip.a_right;
  aux.ratio_left = e.a_left_tilde / slip.a_left;
  return aux;
}

}  // namespace

ErrorRate DecomposedField::Total() const {
  ErrorRate total;
  for (std::size_t i = 0; i < total.size(); ++i) {
    total[i] = nominal[i] + vanishing[i] + nonvanishing[i];
  }
  return total;
}

ErrorRate NominalField(const AugmentedError& e, const ReferenceInput& reference,
                       const SlipState& slip, const ControllerGains& gains,
                       const RobotGeometry& geom) {
  const Auxiliary aux = MakeAuxiliary(e, reference, slip, gains, geom);
  const double b = geom.wheel_spacing;
  const double delta_r = 1.0 + aux.ratio_right;
  const double delta_l = 1.0 + aux.ratio_left;
  const double omega1 = aux.right_speed;
  const double omega2 = aux.left_speed;
  const double omega3 = e.e2 / b - 0.5;
  const double omega4 = e.e2 / b + 0.5;
  const double coupling = (e.e1 / b + gains.k3 / b) * (e.e2 + gains.k3 * e.e3) +
                          std::sin(e.e3) / (b * gains.k2);

  return {
      delta_r * omega3 * omega1 + reference.v * std::cos(e.e3) -
          delta_l * omega4 * omega2,
      delta_l * omega2 * e.e1 / b + reference.v * std::sin(e.e3) -
          delta_r * omega1 * e.e1 / b,
      reference.omega - delta_r * omega1 / b + delta_l * omega2 / b,
      gains.gamma1 * omega2 * (omega4 * e.e1 - coupling),
      gains.gamma2 * omega1 * (-omega3 * e.e1 + coupling),
  };
}

ErrorRate VanishingField(const AugmentedError& e,
                         const ReferenceInput& reference,
                         const SlipState& slip, const ControllerGains& gains,
                         const RobotGeometry& geom) {
  const Auxiliary aux = MakeAuxiliary(e, reference, slip, gains, geom);
  const double bracket = 0.5 * aux.ratio_left * aux.left_speed +
                         0.5 * aux.ratio_right * aux.right_speed -
                         gains.k3 * e.e3 * aux.command.omega +
                         gains.k1 * e.e1;
  return {0.0, slip.sigma * bracket, 0.0, 0.0, 0.0};
}

ErrorRate NonvanishingField(const AugmentedError& e,
                            const ReferenceInput& reference,
                            const SlipState& slip) {
  return {0.0, slip.sigma * reference.v * std::cos(e.e3), 0.0,
          -slip.a_left_dot, -slip.a_right_dot};
}

DecomposedField Decompose(const AugmentedError& e,
                          const ReferenceInput& reference,
                          const SlipState& slip, const ControllerGains& gains,
                          const RobotGeometry& geom) {
  return {NominalField(e, reference, slip, gains, geom),
          VanishingField(e, reference, slip, gains, geom),
          NonvanishingField(e, reference, slip)};
}

ClosedLoopRate PoseSpaceField(const ClosedLoopState& state,
                              const ReferenceInput& reference,
                              const RobotPose& reference_pose,
                              const SlipState& slip,
                              const ControllerGains& gains,
                              const RobotGeometry& geom) {
  ClosedLoopRate rate;
  rate.error = ComputePoseError(reference_pose, state.pose);
  rate.command = ControlLaw(rate.error, reference, gains);
  rate.wheels = EffectiveInput(rate.command, state.estimates, geom);
  rate.realized = WheelToBody(rate.wheels, slip, geom);
  rate.pose_rate =
      PoseRateWithLateralSlip(state.pose, rate.realized, slip.sigma);
  rate.estimate_rates = UpdateRule(rate.error, rate.command, gains, geom);
  return rate;
}

AugmentedError MakeAugmentedError(const RobotPose& reference_pose,
                                  const ClosedLoopState& state,
                                  const SlipState& slip) {
  const PoseError e = ComputePoseError(reference_pose, state.pose);
  return {e.e1, e.e2, e.e3, state.estimates.a_left_hat - slip.a_left,
          state.estimates.a_right_hat - slip.a_right};
}

}  // namespace slipkin
