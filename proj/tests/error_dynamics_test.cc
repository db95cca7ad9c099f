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
#include <random>

#include <gtest/gtest.h>

#include "slipkin/integrator.h"
#include "slipkin/reference.h"
#include "slipkin/slip_profiles.h"

namespace slipkin {
namespace {

const ControllerGains kGains{1.44, 10, 1.83, 3, 3};
const RobotGeometry kGeom;

SlipState Slip(double al, double ar, double sigma, double al_dot = 0.0,
               double ar_dot = 0.0) {
  return {al, ar, sigma, al_dot, ar_dot};
}

TEST(NominalFieldTest, VanishesAtOrigin) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const ReferenceInput ref{u(rng), u(rng) - 0.5, u(rng), u(rng)};
    const SlipState s = Slip(1 + u(rng), 1 + u(rng), u(rng));
    for (double v : NominalField({}, ref, s, kGains, kGeom)) {
      EXPECT_NEAR(v, 0.0, 1e-14);
    }
    for (double v : VanishingField({}, ref, s, kGains, kGeom)) {
      EXPECT_EQ(v, 0.0);
    }
  }
}

TEST(NominalFieldTest, AdaptationRowsForLongitudinalError) {
  const double e1 = 0.3;
  const ReferenceInput ref{0.5, 0.2};
  const ErrorRate f =
      NominalField({e1, 0, 0, 0.1, -0.2}, ref, Slip(1.5, 2, 0), kGains, kGeom);
  const BodyVelocity c = ControlLaw({e1, 0, 0}, ref, kGains);
  const double omega1 = c.v + kGeom.wheel_spacing * c.omega / 2;
  const double omega2 = c.v - kGeom.wheel_spacing * c.omega / 2;
  EXPECT_NEAR(f[3], kGains.gamma1 * omega2 * e1 / 2, 1e-14);
  EXPECT_NEAR(f[4], kGains.gamma2 * omega1 * e1 / 2, 1e-14);
}

TEST(NominalFieldTest, MatchesPlanarErrorDynamicsWithoutLateralSlip) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int i = 0; i < 200; ++i) {
    const SlipState s = Slip(1.5 + u(rng), 2.0 + u(rng), 0.0);
    const AugmentedError e{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const ReferenceInput ref{0.6 + u(rng), u(rng)};
    const BodyVelocity c = ControlLaw(e.pose(), ref, kGains);
    const WheelSpeeds xi = EffectiveInput(
        c, {s.a_left + e.a_left_tilde, s.a_right + e.a_right_tilde}, kGeom);
    const BodyVelocity real = WheelToBody(xi, s, kGeom);
    const EstimateRates rates = UpdateRule(e.pose(), c, kGains, kGeom);
    const ErrorRate expected{
        real.omega * e.e2 - real.v + ref.v * std::cos(e.e3),
        -real.omega * e.e1 + ref.v * std::sin(e.e3),
        ref.omega - real.omega,
        rates.a_left_hat_dot,
        rates.a_right_hat_dot,
    };
    const ErrorRate total = Decompose(e, ref, s, kGains, kGeom).Total();
    for (int k = 0; k < 5; ++k) {
      EXPECT_NEAR(total[k], expected[k], 1e-12) << k;
    }
  }
}

TEST(VanishingFieldTest, ZeroSigmaAndLinearity) {
  const AugmentedError e{0.2, -0.1, 0.3, 0.4, -0.3};
  const ReferenceInput ref{0.5, 0.1};
  for (double v : VanishingField(e, ref, Slip(1.5, 2, 0), kGains, kGeom)) {
    EXPECT_EQ(v, 0.0);
  }
  const ErrorRate one = VanishingField(e, ref, Slip(1.5, 2, 0.3), kGains, kGeom);
  const ErrorRate two = VanishingField(e, ref, Slip(1.5, 2, 0.6), kGains, kGeom);
  for (int k = 0; k < 5; ++k) {
    EXPECT_EQ(two[k], 2.0 * one[k]);
    if (k != 1) {
      EXPECT_EQ(one[k], 0.0);
    }
  }
}

TEST(NonvanishingFieldTest, Values) {
  const ReferenceInput ref{0.4, 0.0};
  const ErrorRate at0 = NonvanishingField({}, ref, Slip(1.5, 2, 0.25, 0.1, -0.2));
  EXPECT_EQ(at0[0], 0.0);
  EXPECT_DOUBLE_EQ(at0[1], 0.25 * 0.4);
  EXPECT_EQ(at0[2], 0.0);
  EXPECT_EQ(at0[3], -0.1);
  EXPECT_EQ(at0[4], 0.2);

  for (double v : NonvanishingField({0.1, 0.2, 0.3, 0.1, 0.1}, ref,
                                    Slip(1.5, 2, 0))) {
    EXPECT_EQ(v, 0.0);
  }

  const SlipState s = EvaluateValidation(35.0);
  const ReferenceInput r35 = ReferenceInputAt(35.0);
  const double e3 = 0.2;
  const ErrorRate g = NonvanishingField({0, 0, e3, 0, 0}, r35, s);
  EXPECT_NEAR(s.sigma, 3.0 * std::exp(-1.05), 1e-14);
  EXPECT_NEAR(g[1], s.sigma * r35.v * std::cos(e3), 1e-15);
}

TEST(PoseSpaceFieldTest, Equilibrium) {
  const RobotPose q{1.0, 2.0, 0.4};
  const ReferenceInput ref{0.5, 0.2};
  const SlipState s = Slip(5.0 / 3.0, 2.5, 0.0);
  const ClosedLoopRate rate = PoseSpaceField(
      {q, {s.a_left, s.a_right}}, ref, q, s, kGains, kGeom);
  const PoseRate expected = PoseRateNoSlip(q, ref.eta());
  EXPECT_NEAR(rate.pose_rate.x_dot, expected.x_dot, 1e-14);
  EXPECT_NEAR(rate.pose_rate.y_dot, expected.y_dot, 1e-14);
  EXPECT_NEAR(rate.pose_rate.theta_dot, expected.theta_dot, 1e-14);
  EXPECT_EQ(rate.estimate_rates.a_left_hat_dot, 0.0);
  EXPECT_EQ(rate.estimate_rates.a_right_hat_dot, 0.0);
}

TEST(PoseSpaceFieldTest, PerfectEstimatesRealizeCommand) {
  const SlipState s = Slip(1.3, 2.2, 0.0);
  const ClosedLoopRate rate =
      PoseSpaceField({{0.1, -0.2, 0.3}, {1.3, 2.2}}, {0.5, 0.1}, {0, 0, 0}, s,
                     kGains, kGeom);
  EXPECT_NEAR(rate.realized.v, rate.command.v, 1e-14);
  EXPECT_NEAR(rate.realized.omega, rate.command.omega, 1e-14);
}

// Integrates the same closed loop in pose space and in error space and
// compares the augmented error after 10 s.
TEST(DualSimulationTest, PoseAndErrorSpaceAgree) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const double t0 = 6.0;
  const double t1 = 16.0;
  const double h = 1e-3;
  for (int trial = 0; trial < 3; ++trial) {
    const SlipState s0 = EvaluateValidation(t0);
    // Pose-space state: reference pose, robot pose, estimates.
    StateVector<8> p{0.0, 0.0, 0.1, u(rng), u(rng), 0.1 + u(rng),
                     s0.a_left + u(rng), s0.a_right + u(rng)};
    const AugmentedError e0 = MakeAugmentedError(
        {p[0], p[1], p[2]}, {{p[3], p[4], p[5]}, {p[6], p[7]}}, s0);
    StateVector<5> x{e0.e1, e0.e2, e0.e3, e0.a_left_tilde, e0.a_right_tilde};

    auto pose_field = [](double t, const StateVector<8>& y) {
      const ReferenceInput ref = ReferenceInputAt(t);
      const SlipState s = EvaluateValidation(t);
      const RobotPose q_ref{y[0], y[1], y[2]};
      const ClosedLoopRate r = PoseSpaceField(
          {{y[3], y[4], y[5]}, {y[6], y[7]}}, ref, q_ref, s, kGains, kGeom);
      const PoseRate rr = PoseRateNoSlip(q_ref, ref.eta());
      return StateVector<8>{rr.x_dot,
                            rr.y_dot,
                            rr.theta_dot,
                            r.pose_rate.x_dot,
                            r.pose_rate.y_dot,
                            r.pose_rate.theta_dot,
                            r.estimate_rates.a_left_hat_dot,
                            r.estimate_rates.a_right_hat_dot};
    };
    auto error_field = [](double t, const StateVector<5>& y) {
      const AugmentedError e{y[0], y[1], y[2], y[3], y[4]};
      return Decompose(e, ReferenceInputAt(t), EvaluateValidation(t), kGains,
                       kGeom)
          .Total();
    };
    const long steps = GridSteps(t1 - t0, h);
    for (long i = 0; i < steps; ++i) {
      const double t = t0 + GridTime(i, t1 - t0, h);
      p = IntegrateStep<8>(pose_field, t, p, h);
      x = IntegrateStep<5>(error_field, t, x, h);
    }
    const AugmentedError e1 = MakeAugmentedError(
        {p[0], p[1], p[2]}, {{p[3], p[4], p[5]}, {p[6], p[7]}},
        EvaluateValidation(t1));
    EXPECT_NEAR(x[0], e1.e1, 1e-6);
    EXPECT_NEAR(x[1], e1.e2, 1e-6);
    EXPECT_NEAR(x[2], e1.e3, 1e-6);
    EXPECT_NEAR(x[3], e1.a_left_tilde, 1e-6);
    EXPECT_NEAR(x[4], e1.a_right_tilde, 1e-6);
  }
}

}  // namespace
}  // namespace slipkin
