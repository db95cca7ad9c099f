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

#include "slipkin/reference.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "slipkin/errors.h"
#include "slipkin/integrator.h"

namespace slipkin {
namespace {

using std::numbers::pi;

int SegmentIndex(double t) {
  static constexpr double kEnds[] = {5.0, 20.0, 25.0, 30.0,
                                     35.0, 40.0, 45.0, 50.0};
  int index = 0;
  for (double end : kEnds) {
    if (t < end) return index;
    ++index;
  }
  return index;
}

ReferenceInput RampUp(double t) {
  const double w = pi / 5.0;
  return {0.25 * (1.0 - std::cos(w * t)), 0.0, 0.25 * w * std::sin(w * t),
          0.0};
}

ReferenceInput RampDown(double t) {
  const double w = pi / 5.0;
  return {0.25 * (1.0 + std::cos(w * t)), 0.0, -0.25 * w * std::sin(w * t),
          0.0};
}

// Curved segment; `turn` is -1 or +1 and sets the sign of the curvature.
ReferenceInput Curve(double t, double turn) {
  const double w = 2.0 * pi / 5.0;
  const double amplitude = 0.15 * pi;
  const double v = amplitude * (1.0 - std::cos(w * t));
  const double v_dot = amplitude * w * std::sin(w * t);
  return {v, turn * v / 1.5, v_dot, turn * v_dot / 1.5};
}

}  // namespace

ReferenceInput ReferenceInputOnPiece(double t, double piece_time) {
  switch (SegmentIndex(piece_time)) {
    case 0:
      return RampUp(t);
    case 1:
      return {0.5, 0.0, 0.0, 0.0};
    case 2:
      return RampDown(t);
    case 3:
      return Curve(t, -1.0);
    case 4:
      return Curve(t, 1.0);
    case 5:
      return Curve(t, -1.0);
    case 6:
      return Curve(t, 1.0);
    case 7:
      return RampDown(t);
    default:
      return {0.5, 0.0, 0.0, 0.0};
  }
}

ReferenceInput ReferenceInputAt(double t) {
  return ReferenceInputOnPiece(t, t);
}

const std::vector<double>& ReferenceBreakpoints() {
  static const std::vector<double> kBreakpoints{5.0,  20.0, 25.0, 30.0,
                                                35.0, 40.0, 45.0, 50.0};
  return kBreakpoints;
}

ReferenceTrajectory GenerateReference(double t_final, double step) {
  if (!(step > 0.0) || !(t_final > 0.0)) {
    throw DomainError("reference generation needs positive step and horizon");
  }
  const long steps = GridSteps(t_final, step);
  ReferenceTrajectory trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps) + 1);

  StateVector<3> q{0.0, 0.0, 0.0};
  trajectory.push_back({0.0, {}, ReferenceInputAt(0.0)});
  for (long i = 0; i < steps; ++i) {
    const double t0 = GridTime(i, t_final, step);
    const double t1 = GridTime(i + 1, t_final, step);
    const auto points = SplitInterval(t0, t1, ReferenceBreakpoints());
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
      const double piece = 0.5 * (points[k] + points[k + 1]);
      auto field = [piece](double t, const StateVector<3>& x) {
        const ReferenceInput in = ReferenceInputOnPiece(t, piece);
        return StateVector<3>{in.v * std::cos(x[2]), in.v * std::sin(x[2]),
                              in.omega};
      };
      q = IntegrateStep<3>(field, points[k], q, points[k + 1] - points[k]);
    }
    trajectory.push_back({t1, {q[0], q[1], q[2]}, ReferenceInputAt(t1)});
  }
  return trajectory;
}

ReferenceTrajectory Subsample(const ReferenceTrajectory& trajectory,
                              double interval) {
  if (!(interval > 0.0)) throw DomainError("subsample interval must be positive");
  ReferenceTrajectory out;
  double next = 0.0;
  for (const ReferenceSample& sample : trajectory) {
    if (sample.t >= next - 1e-9 * std::max(1.0, next)) {
      out.push_back(sample);
      next = interval * std::round(sample.t / interval) + interval;
    }
  }
  if (!trajectory.empty() && out.back().t != trajectory.back().t) {
    out.push_back(trajectory.back());
  }
  return out;
}

AssumptionReport CheckAssumptionBounds(
    const std::function<ReferenceInput(double)>& input, double t_start,
    double t_end, double sample_step, double mu1, double mu2,
    double wheel_spacing) {
  if (!(sample_step > 0.0) || t_end < t_start) {
    throw DomainError("invalid sampling range");
  }
  AssumptionReport report;
  report.inf_v = std::numeric_limits<double>::infinity();
  report.inf_two_v_plus_b_omega = report.inf_v;
  report.inf_two_v_minus_b_omega = report.inf_v;

  const auto n = static_cast<long>(
      std::floor((t_end - t_start) / sample_step + 1e-9));
  bool in_violation = false;
  for (long i = 0; i <= n; ++i) {
    const double t = t_start + static_cast<double>(i) * sample_step;
    const ReferenceInput in = input(t);
    const double plus = std::abs(2.0 * in.v + wheel_spacing * in.omega);
    const double minus = std::abs(2.0 * in.v - wheel_spacing * in.omega);
    report.inf_v = std::min(report.inf_v, in.v);
    report.inf_two_v_plus_b_omega =
        std::min(report.inf_two_v_plus_b_omega, plus);
    report.inf_two_v_minus_b_omega =
        std::min(report.inf_two_v_minus_b_omega, minus);

    const bool violated = in.v < mu1 || plus < mu2 || minus < mu2;
    if (violated && !in_violation) {
      report.violations.push_back({t, t});
    } else if (violated) {
      report.violations.back().end = t;
    }
    in_violation = violated;
  }
  report.mu1_satisfied = report.inf_v >= mu1;
  report.mu2_satisfied = std::min(report.inf_two_v_plus_b_omega,
                                  report.inf_two_v_minus_b_omega) >= mu2;
  return report;
}

AssumptionReport CheckAssumptionBounds(double t_start, double t_end,
                                       double sample_step, double mu1,
                                       double mu2, double wheel_spacing) {
  return CheckAssumptionBounds(ReferenceInputAt, t_start, t_end, sample_step,
                               mu1, mu2, wheel_spacing);
}

}  // namespace slipkin
