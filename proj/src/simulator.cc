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

#include "slipkin/simulator.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "slipkin/csv.h"
#include "slipkin/error_dynamics.h"
#include "slipkin/errors.h"
#include "slipkin/integrator.h"
#include "slipkin/reference.h"

namespace slipkin {
namespace {

// Layout: reference pose (3), robot pose (3), slip estimates (2).
using LoopState = StateVector<8>;

RobotPose ReferencePoseOf(const LoopState& x) { return {x[0], x[1], x[2]}; }

ClosedLoopState RobotStateOf(const LoopState& x) {
  return {{x[3], x[4], x[5]}, {x[6], x[7]}};
}

// Estimates resting on the floor whose update would push them lower.
using HeldMask = std::array<bool, 2>;

constexpr HeldMask kNoneHeld{false, false};

LoopState Derivative(double t, double piece_time, const LoopState& x,
                     const SimulationConfig& config, const HeldMask& held) {
  const ReferenceInput reference = ReferenceInputOnPiece(t, piece_time);
  const SlipState slip = config.slip.EvaluateOnPiece(t, piece_time);
  const double theta_ref = x[2];
  // Stages of a step may undershoot the floor; the controller always acts on
  // the projected estimates.
  ClosedLoopState robot = RobotStateOf(x);
  robot.estimates.a_left_hat =
      std::max(robot.estimates.a_left_hat, config.estimate_floor);
  robot.estimates.a_right_hat =
      std::max(robot.estimates.a_right_hat, config.estimate_floor);
  const ClosedLoopRate rate = PoseSpaceField(
      robot, reference, ReferencePoseOf(x), slip, config.gains, config.geom);
  return {reference.v * std::cos(theta_ref),
          reference.v * std::sin(theta_ref),
          reference.omega,
          rate.pose_rate.x_dot,
          rate.pose_rate.y_dot,
          rate.pose_rate.theta_dot,
          held[0] ? 0.0 : rate.estimate_rates.a_left_hat_dot,
          held[1] ? 0.0 : rate.estimate_rates.a_right_hat_dot};
}

// Reports whether the step of length h from (t, x) meets a floor event:
// a free estimate dropping below the floor or a held estimate whose update
// turns upward again.
bool MeetsFloorEvent(double t, double piece_time, const LoopState& x,
                     double h, const SimulationConfig& config,
                     const HeldMask& held, LoopState* end) {
  auto field = [&](double s, const LoopState& state) {
    return Derivative(s, piece_time, state, config, held);
  };
  *end = IntegrateStep<8>(field, t, x, h);
  bool released = false;
  if (held[0] || held[1]) {
    const LoopState raw =
        Derivative(t + h, piece_time, *end, config, kNoneHeld);
    released = (held[0] && raw[6] > 0.0) || (held[1] && raw[7] > 0.0);
  }
  return released || (!held[0] && (*end)[6] < config.estimate_floor) ||
         (!held[1] && (*end)[7] < config.estimate_floor);
}

// Advances x across [t0, t1] on one input piece. Floor contacts and releases
// are located by bisection so that each smooth arc is integrated on its own.
void AdvancePiece(double t0, double t1, const SimulationConfig& config,
                  LoopState* x, HeldMask* held, long* floor_events) {
  constexpr int kMaxEventsPerPiece = 8;
  constexpr int kBisections = 60;
  const double piece = 0.5 * (t0 + t1);
  double t = t0;
  for (int event = 0; t < t1; ++event) {
    if (held->at(0) || held->at(1)) {
      const LoopState raw = Derivative(t, piece, *x, config, kNoneHeld);
      for (int j = 0; j < 2; ++j) {
        if ((*held)[j] && raw[6 + j] > 0.0) (*held)[j] = false;
      }
    }
    LoopState end;
    const double h = t1 - t;
    if (event >= kMaxEventsPerPiece ||
        !MeetsFloorEvent(t, piece, *x, h, config, *held, &end)) {
      if (event >= kMaxEventsPerPiece) {
        auto field = [&](double s, const LoopState& state) {
          return Derivative(s, piece, state, config, *held);
        };
        end = IntegrateStep<8>(field, t, *x, h);
      }
      *x = end;
      break;
    }
    double lo = 0.0;
    double hi = h;
    for (int k = 0; k < kBisections && hi - lo > 1e-15 * h; ++k) {
      const double mid = 0.5 * (lo + hi);
      LoopState probe;
      (MeetsFloorEvent(t, piece, *x, mid, config, *held, &probe) ? hi : lo) =
          mid;
    }
    LoopState probe;
    MeetsFloorEvent(t, piece, *x, hi, config, *held, &probe);
    *x = probe;
    t = hi < h ? t + hi : t1;
    for (int j = 0; j < 2; ++j) {
      if (!(*held)[j] && (*x)[6 + j] <= config.estimate_floor) {
        (*held)[j] = true;
        ++*floor_events;
      }
      if ((*held)[j]) (*x)[6 + j] = config.estimate_floor;
    }
  }
}

LogRow MakeRow(double t, const LoopState& x, const SimulationConfig& config) {
  LogRow row;
  row.t = t;
  row.reference_pose = ReferencePoseOf(x);
  row.reference = ReferenceInputAt(t);
  const ClosedLoopState robot = RobotStateOf(x);
  row.pose = robot.pose;
  row.estimates = robot.estimates;
  row.slip = config.slip.Evaluate(t);
  const ClosedLoopRate rate =
      PoseSpaceField(robot, row.reference, row.reference_pose, row.slip,
                     config.gains, config.geom);
  row.error = rate.error;
  row.command = rate.command;
  row.wheels = rate.wheels;
  row.a_left_tilde = robot.estimates.a_left_hat - row.slip.a_left;
  row.a_right_tilde = robot.estimates.a_right_hat - row.slip.a_right;

  row.lyapunov = LyapunovV(row.error, config.gains);
  if (config.gains.gamma1 > 0.0) {
    row.lyapunov += row.a_left_tilde * row.a_left_tilde /
                    (2.0 * config.gains.gamma1 * row.slip.a_left);
  }
  if (config.gains.gamma2 > 0.0) {
    row.lyapunov += row.a_right_tilde * row.a_right_tilde /
                    (2.0 * config.gains.gamma2 * row.slip.a_right);
  }
  return row;
}

// AKC and NKC share one code path; NKC is AKC with zero adaptation rates and
// unit estimates.
SimulationConfig Effective(const SimulationConfig& config) {
  SimulationConfig effective = config;
  if (config.mode == ControllerMode::kNonAdaptive) {
    effective.gains.gamma1 = 0.0;
    effective.gains.gamma2 = 0.0;
    effective.initial_estimates = {1.0, 1.0};
  }
  return effective;
}

}  // namespace

const char* ControllerModeName(ControllerMode mode) {
  return mode == ControllerMode::kAdaptive ? "AKC" : "NKC";
}

void SimulationConfig::Validate() const {
  geom.Validate();
  gains.Validate(/*allow_zero_rates=*/mode == ControllerMode::kNonAdaptive);
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("step must be positive");
  }
  if (!(t_final >= step) || !std::isfinite(t_final)) {
    throw DomainError("t_final must be at least one step");
  }
  if (!(estimate_floor > 0.0)) {
    throw DomainError("estimate floor must be positive");
  }
  if (mode == ControllerMode::kAdaptive &&
      (!(initial_estimates.a_left_hat > 0.0) ||
       !(initial_estimates.a_right_hat > 0.0))) {
    throw DomainError("initial slip estimates must be positive");
  }
  for (double v : {initial_pose.x, initial_pose.y, initial_pose.theta}) {
    if (!std::isfinite(v)) throw DomainError("initial pose must be finite");
  }
}

TrajectoryLog Simulate(const SimulationConfig& requested) {
  requested.Validate();
  const SimulationConfig config = Effective(requested);

  std::vector<double> breakpoints = ReferenceBreakpoints();
  for (double b : config.slip.Breakpoints()) breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());

  const long steps = GridSteps(config.t_final, config.step);
  TrajectoryLog log;
  log.mode = requested.mode;
  log.step = config.step;
  log.rows.reserve(static_cast<std::size_t>(steps) + 1);

  LoopState x{0.0,
              0.0,
              0.0,
              config.initial_pose.x,
              config.initial_pose.y,
              config.initial_pose.theta,
              config.initial_estimates.a_left_hat,
              config.initial_estimates.a_right_hat};
  log.rows.push_back(MakeRow(0.0, x, config));
  HeldMask held = kNoneHeld;

  for (long i = 0; i < steps; ++i) {
    const double t0 = GridTime(i, config.t_final, config.step);
    const double t1 = GridTime(i + 1, config.t_final, config.step);
    const auto points = SplitInterval(t0, t1, breakpoints);
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
      try {
        AdvancePiece(points[k], points[k + 1], config, &x, &held,
                     &log.floor_events);
      } catch (const DomainError& e) {
        // An intermediate stage left the valid estimate range: the step is
        // too coarse for these gains.
        throw NumericError("integration failed at t = " +
                           FormatDouble(points[k]) + ": " + e.what());
      }
      for (int j = 6; j < 8; ++j) {
        x[j] = std::max(x[j], config.estimate_floor);
      }
    }
    for (double v : x) {
      if (!std::isfinite(v)) {
        throw NumericError("non-finite state at t = " + FormatDouble(t1));
      }
    }
    log.rows.push_back(MakeRow(t1, x, config));
  }
  return log;
}

const std::vector<std::string>& TrajectoryCsvHeader() {
  static const std::vector<std::string> kHeader{
      "t",        "x_ref",    "y_ref",    "theta_ref", "x_p",     "y_p",
      "theta_p",  "e1",       "e2",       "e3",        "al_hat",  "ar_hat",
      "al_tilde", "ar_tilde", "v_c",      "omega_c",   "omega_l", "omega_r",
      "a_l",      "a_r",      "sigma",    "V_a"};
  return kHeader;
}

void WriteTrajectoryCsv(const TrajectoryLog& log, std::ostream& out) {
  WriteCsvHeader(out, TrajectoryCsvHeader());
  for (const LogRow& r : log.rows) {
    const double values[] = {
        r.t,           r.reference_pose.x,  r.reference_pose.y,
        r.reference_pose.theta,             r.pose.x,
        r.pose.y,      r.pose.theta,        r.error.e1,
        r.error.e2,    r.error.e3,          r.estimates.a_left_hat,
        r.estimates.a_right_hat,            r.a_left_tilde,
        r.a_right_tilde,                    r.command.v,
        r.command.omega,                    r.wheels.left,
        r.wheels.right,                     r.slip.a_left,
        r.slip.a_right,                     r.slip.sigma,
        r.lyapunov};
    WriteCsvRow(out, values);
  }
}

double AugmentedErrorNorm(const LogRow& row) {
  const AugmentedError e = row.augmented();
  return std::sqrt(e.e1 * e.e1 + e.e2 * e.e2 + e.e3 * e.e3 +
                   e.a_left_tilde * e.a_left_tilde +
                   e.a_right_tilde * e.a_right_tilde);
}

UltimateBound MeasureUltimateBound(const TrajectoryLog& log,
                                   double transient) {
  if (log.rows.empty() || !(transient < log.rows.back().t)) {
    throw DomainError("transient must be shorter than the log");
  }
  UltimateBound result;
  for (const LogRow& row : log.rows) {
    if (row.t >= transient) {
      result.bound = std::max(result.bound, AugmentedErrorNorm(row));
    }
  }
  const double limit = result.bound * (1.0 + 1e-9);
  result.settle_time = log.rows.front().t;
  for (std::size_t i = log.rows.size(); i-- > 0;) {
    if (AugmentedErrorNorm(log.rows[i]) > limit) {
      result.settle_time = log.rows[std::min(i + 1, log.rows.size() - 1)].t;
      break;
    }
  }
  return result;
}

}  // namespace slipkin
