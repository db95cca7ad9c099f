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

#ifndef SLIPKIN_REFERENCE_H_
#define SLIPKIN_REFERENCE_H_

#include <functional>
#include <vector>

#include "slipkin/kinematics.h"

namespace slipkin {

// Reference body velocity and its time derivative.
struct ReferenceInput {
  double v = 0.0;
  double omega = 0.0;
  double v_dot = 0.0;
  double omega_dot = 0.0;

  BodyVelocity eta() const { return {v, omega}; }
};

// The nine-segment reference input: straight line on [0, 25), a curve of
// alternating curvature on [25, 45), straight line afterwards. Derivatives
// take the right-limit value at segment boundaries.
ReferenceInput ReferenceInputAt(double t);

// Formula of the segment containing `piece_time`, evaluated at `t`.
ReferenceInput ReferenceInputOnPiece(double t, double piece_time);

// Segment boundaries of ReferenceInputAt: 5, 20, 25, ..., 50.
const std::vector<double>& ReferenceBreakpoints();

struct ReferenceSample {
  double t = 0.0;
  RobotPose pose;
  ReferenceInput input;
};

using ReferenceTrajectory = std::vector<ReferenceSample>;

// Integrates q_ref' = S(q_ref) eta_ref(t) from the origin with fixed-step
// RK4, sampling every `step` seconds over [0, t_final].
ReferenceTrajectory GenerateReference(double t_final, double step);

// Keeps the samples that fall on multiples of `interval` (which must be a
// multiple of the generation step), plus the final sample.
ReferenceTrajectory Subsample(const ReferenceTrajectory& trajectory,
                              double interval);

struct TimeInterval {
  double start = 0.0;
  double end = 0.0;
};

// Sampled check of the reference-input bounds v_ref >= mu1 and
// |2 v_ref +- b omega_ref| >= mu2.
struct AssumptionReport {
  double inf_v = 0.0;
  double inf_two_v_plus_b_omega = 0.0;
  double inf_two_v_minus_b_omega = 0.0;
  bool mu1_satisfied = false;
  bool mu2_satisfied = false;
  // Maximal runs of consecutive samples where either bound fails.
  std::vector<TimeInterval> violations;
};

AssumptionReport CheckAssumptionBounds(
    const std::function<ReferenceInput(double)>& input, double t_start,
    double t_end, double sample_step, double mu1, double mu2,
    double wheel_spacing);

// Same check using ReferenceInputAt.
AssumptionReport CheckAssumptionBounds(double t_start, double t_end,
                                       double sample_step, double mu1,
                                       double mu2, double wheel_spacing);

}  // namespace slipkin

#endif  // SLIPKIN_REFERENCE_H_
