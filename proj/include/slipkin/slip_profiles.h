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

#ifndef SLIPKIN_SLIP_PROFILES_H_
#define SLIPKIN_SLIP_PROFILES_H_

#include <string>
#include <vector>

#include "slipkin/kinematics.h"

namespace slipkin {

enum class SlipKind { kConstant, kTraining, kValidation, kTable };

// One knot of a tabulated slip profile.
struct SlipTableRow {
  double t = 0.0;
  double a_left = 1.0;
  double a_right = 1.0;
  double sigma = 0.0;
};

// Unnormalized sinc, sin(x)/x with sinc(0) = 1.
double Sinc(double x);

// Constant longitudinal slip with no lateral slip.
SlipState EvaluateConstant(double t, double a_left, double a_right);

// Step profile used for gain tuning: a_l = 5/3 on [15, 50), a_r = 5/2 on
// [30, 65), pure rolling (a = 1) elsewhere.
SlipState EvaluateTraining(double t);

// Smooth time-varying profile used for validation runs. `sigma_scale`
// multiplies the lateral slip amplitude.
SlipState EvaluateValidation(double t, double sigma_scale = 1.0);

// Immutable, time-indexed slip scenario.
class SlipProfile {
 public:
  // Pure rolling: a_l = a_r = 1, sigma = 0.
  SlipProfile() = default;

  static SlipProfile Constant(double a_left, double a_right);
  static SlipProfile Training();
  static SlipProfile Validation(double sigma_scale = 1.0);
  // Rows must have strictly increasing t and a >= 1.
  static SlipProfile FromTable(std::vector<SlipTableRow> rows);
  // Loads a CSV with header t,a_l,a_r,sigma.
  static SlipProfile LoadCsv(const std::string& path);

  SlipKind kind() const { return kind_; }
  double sigma_scale() const { return sigma_scale_; }
  const std::vector<SlipTableRow>& table() const { return table_; }

  SlipState Evaluate(double t) const { return EvaluateOnPiece(t, t); }

  // Evaluates the formula of the piece that contains `piece_time` at time
  // `t`. Integrators pass the step midpoint as `piece_time` so that every
  // stage of a step sees the same side of a discontinuity.
  SlipState EvaluateOnPiece(double t, double piece_time) const;

  // Instants at which the slip values jump.
  std::vector<double> Breakpoints() const;

 private:
  SlipKind kind_ = SlipKind::kConstant;
  double a_left_ = 1.0;
  double a_right_ = 1.0;
  double sigma_scale_ = 1.0;
  std::vector<SlipTableRow> table_;
};

// Grid estimate of sup_t max(a_l(t), a_r(t)) over [0, horizon].
double MaxSlipParams(const SlipProfile& profile, double horizon,
                     double grid_step = 1e-3);

}  // namespace slipkin

#endif  // SLIPKIN_SLIP_PROFILES_H_
