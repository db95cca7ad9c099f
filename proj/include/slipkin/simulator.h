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

#ifndef SLIPKIN_SIMULATOR_H_
#define SLIPKIN_SIMULATOR_H_

#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "slipkin/controller.h"
#include "slipkin/kinematics.h"
#include "slipkin/slip_profiles.h"

namespace slipkin {

// AKC adapts the slip estimates; NKC holds them at one (adaptation off).
enum class ControllerMode { kAdaptive, kNonAdaptive };

const char* ControllerModeName(ControllerMode mode);

struct SimulationConfig {
  RobotGeometry geom;
  ControllerGains gains;
  ControllerMode mode = ControllerMode::kAdaptive;
  SlipProfile slip;
  RobotPose initial_pose{0.5, -0.75, -std::numbers::pi / 6.0};
  SlipEstimates initial_estimates{1.6, 1.2};
  double t_final = 70.0;
  double step = 1e-3;
  // Lower bound on the slip estimates. An estimate that reaches it is held
  // there until its update law points upward again.
  double estimate_floor = 0.05;

  // Throws DomainError on invalid values.
  void Validate() const;
};

struct LogRow {
  double t = 0.0;
  RobotPose reference_pose;
  ReferenceInput reference;
  RobotPose pose;
  PoseError error;
  SlipEstimates estimates;
  double a_left_tilde = 0.0;
  double a_right_tilde = 0.0;
  BodyVelocity command;
  WheelSpeeds wheels;
  SlipState slip;
  double lyapunov = 0.0;

  AugmentedError augmented() const {
    return {error.e1, error.e2, error.e3, a_left_tilde, a_right_tilde};
  }
};

struct TrajectoryLog {
  ControllerMode mode = ControllerMode::kAdaptive;
  double step = 0.0;
  std::vector<LogRow> rows;
  // Number of times an estimate reached the positivity floor.
  long floor_events = 0;
};

// Fixed-step RK4 simulation of the reference, the robot and the slip
// estimates, co-integrated on one grid. Integration steps are split at the
// reference and slip discontinuities. Throws NumericError if the state
// becomes non-finite.
TrajectoryLog Simulate(const SimulationConfig& config);

// CSV columns of the trajectory log.
const std::vector<std::string>& TrajectoryCsvHeader();
void WriteTrajectoryCsv(const TrajectoryLog& log, std::ostream& out);

// Euclidean norm of the raw augmented error of a row.
double AugmentedErrorNorm(const LogRow& row);

struct UltimateBound {
  // sup of ||e_a(t)|| over t >= transient.
  double bound = 0.0;
  // First time after which ||e_a|| never again exceeds bound (1 + 1e-9).
  double settle_time = 0.0;
};

UltimateBound MeasureUltimateBound(const TrajectoryLog& log, double transient);

}  // namespace slipkin

#endif  // SLIPKIN_SIMULATOR_H_
