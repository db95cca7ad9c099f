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

#ifndef SLIPKIN_ERROR_DYNAMICS_H_
#define SLIPKIN_ERROR_DYNAMICS_H_

#include <array>

#include "slipkin/controller.h"
#include "slipkin/kinematics.h"
#include "slipkin/reference.h"

namespace slipkin {

// Rate of an AugmentedError, ordered (e1, e2, e3, a_l_tilde, a_r_tilde).
using ErrorRate = std::array<double, 5>;

// The three terms of the closed-loop augmented-error dynamics:
// nominal f_a, the vanishing lateral-slip term g (row 2 only) and the
// nonvanishing term g_n (rows 2, 4, 5).
struct DecomposedField {
  ErrorRate nominal{};
  ErrorRate vanishing{};
  ErrorRate nonvanishing{};

  ErrorRate Total() const;
};

// All fields below take the reference input and slip already evaluated at
// the instant of interest.
ErrorRate NominalField(const AugmentedError& e, const ReferenceInput& reference,
                       const SlipState& slip, const ControllerGains& gains,
                       const RobotGeometry& geom);

ErrorRate VanishingField(const AugmentedError& e,
                         const ReferenceInput& reference,
                         const SlipState& slip, const ControllerGains& gains,
                         const RobotGeometry& geom);

ErrorRate NonvanishingField(const AugmentedError& e,
                            const ReferenceInput& reference,
                            const SlipState& slip);

DecomposedField Decompose(const AugmentedError& e,
                          const ReferenceInput& reference,
                          const SlipState& slip, const ControllerGains& gains,
                          const RobotGeometry& geom);

// Robot pose and slip estimates: the controlled part of the closed loop.
struct ClosedLoopState {
  RobotPose pose;
  SlipEstimates estimates;
};

struct ClosedLoopRate {
  PoseRate pose_rate;
  EstimateRates estimate_rates;
  // Signals computed on the way, exposed for logging.
  PoseError error;
  BodyVelocity command;
  WheelSpeeds wheels;
  BodyVelocity realized;
};

// Pose-space closed loop: pose error -> control law -> effective input ->
// slipping robot, plus the adaptation law.
ClosedLoopRate PoseSpaceField(const ClosedLoopState& state,
                              const ReferenceInput& reference,
                              const RobotPose& reference_pose,
                              const SlipState& slip,
                              const ControllerGains& gains,
                              const RobotGeometry& geom);

// e_a built from poses, estimates and the true slip.
AugmentedError MakeAugmentedError(const RobotPose& reference_pose,
                                  const ClosedLoopState& state,
                                  const SlipState& slip);

}  // namespace slipkin

#endif  // SLIPKIN_ERROR_DYNAMICS_H_
