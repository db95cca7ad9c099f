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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "slipkin/errors.h"

namespace slipkin {
namespace {

constexpr double kTol = 1e-12;

TEST(PoseErrorTest, Examples) {
  PoseError e = ComputePoseError({1, 2, 3}, {1, 2, 3});
  EXPECT_EQ(e.e1, 0.0);
  EXPECT_EQ(e.e2, 0.0);
  EXPECT_EQ(e.e3, 0.0);

  e = ComputePoseError({1, 2, 0.3}, {0, 0, 0});
  EXPECT_NEAR(e.e1, 1.0, kTol);
  EXPECT_NEAR(e.e2, 2.0, kTol);
  EXPECT_NEAR(e.e3, 0.3, kTol);

  e = ComputePoseError({1, 0, std::numbers::pi / 2}, {0, 0, std::numbers::pi / 2});
  EXPECT_NEAR(e.e1, 0.0, kTol);
  EXPECT_NEAR(e.e2, -1.0, kTol);
  EXPECT_NEAR(e.e3, 0.0, kTol);
}

TEST(PoseErrorTest, IsometryAndUnwrappedHeading) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    const RobotPose r{u(rng), u(rng), u(rng)};
    const RobotPose p{u(rng), u(rng), 3.0 * u(rng)};
    const PoseError e = ComputePoseError(r, p);
    const double dx = r.x - p.x;
    const double dy = r.y - p.y;
    EXPECT_NEAR(e.e1 * e.e1 + e.e2 * e.e2, dx * dx + dy * dy,
                1e-12 * (1.0 + dx * dx + dy * dy));
    EXPECT_EQ(e.e3, r.theta - p.theta);
  }
}

TEST(ControlLawTest, ZeroAndLongitudinalError) {
  const ControllerGains g;
  const ReferenceInput ref{0.5, 0.1};
  BodyVelocity c = ControlLaw({}, ref, g);
  EXPECT_NEAR(c.v, 0.5, kTol);
  EXPECT_NEAR(c.omega, 0.1, kTol);

  c = ControlLaw({0.3, 0, 0}, ref, g);
  EXPECT_NEAR(c.v, 0.5 + g.k1 * 0.3, kTol);
  EXPECT_NEAR(c.omega, 0.1, kTol);
}

// Independent evaluation of the tracking law written directly from its
// definition; shares no code with the library.
BodyVelocity ReferenceLaw(double e1, double e2, double e3, double v, double w,
                          double k1, double k2, double k3) {
  const double wc = w + v / 2.0 * (k2 * (e2 + k3 * e3) + std::sin(e3) / k3);
  const double vc = v * std::cos(e3) - k3 * e3 * wc + k1 * e1;
  return {vc, wc};
}

TEST(ControlLawTest, NumericExample) {
  const ControllerGains g{1.44, 10, 1.83, 3, 3};
  const BodyVelocity c = ControlLaw({0.1, -0.2, 0.05}, {0.5, 0.1}, g);
  const double wc = 0.1 + 0.25 * (10 * (-0.2 + 1.83 * 0.05) +
                                  std::sin(0.05) / 1.83);
  const double vc = 0.5 * std::cos(0.05) - 1.83 * 0.05 * wc + 0.144;
  EXPECT_NEAR(c.omega, wc, kTol);
  EXPECT_NEAR(c.v, vc, kTol);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> k(0.1, 10.0);
  for (int i = 0; i < 200; ++i) {
    const ControllerGains gi{k(rng), k(rng), k(rng), 1, 1};
    const PoseError e{u(rng), u(rng), u(rng)};
    const ReferenceInput ref{u(rng), u(rng)};
    const BodyVelocity a = ControlLaw(e, ref, gi);
    const BodyVelocity b =
        ReferenceLaw(e.e1, e.e2, e.e3, ref.v, ref.omega, gi.k1, gi.k2, gi.k3);
    EXPECT_NEAR(a.v, b.v, 1e-12 * std::max(1.0, std::abs(b.v)));
    EXPECT_NEAR(a.omega, b.omega, 1e-12 * std::max(1.0, std::abs(b.omega)));
  }
}

TEST(UpdateRuleTest, ZeroAndLongitudinalError) {
  const ControllerGains g;
  const RobotGeometry geom;
  const BodyVelocity c{0.4, 0.3};
  EstimateRates r = UpdateRule({}, c, g, geom);
  EXPECT_EQ(r.a_left_hat_dot, 0.0);
  EXPECT_EQ(r.a_right_hat_dot, 0.0);

  const double e1 = 0.2;
  r = UpdateRule({e1, 0, 0}, c, g, geom);
  const double b = geom.wheel_spacing;
  EXPECT_NEAR(r.a_left_hat_dot, g.gamma1 * (c.v - b * c.omega / 2) * e1 / 2,
              kTol);
  EXPECT_NEAR(r.a_right_hat_dot, g.gamma2 * (c.v + b * c.omega / 2) * e1 / 2,
              kTol);
}

TEST(UpdateRuleTest, LinearInRates) {
  const RobotGeometry geom;
  const PoseError e{0.1, -0.2, 0.05};
  ControllerGains g;
  const BodyVelocity c = ControlLaw(e, {0.5, 0.1}, g);
  const EstimateRates base = UpdateRule(e, c, g, geom);
  g.gamma1 *= 2.0;
  const EstimateRates doubled = UpdateRule(e, c, g, geom);
  EXPECT_NEAR(doubled.a_left_hat_dot, 2.0 * base.a_left_hat_dot, kTol);
  EXPECT_EQ(doubled.a_right_hat_dot, base.a_right_hat_dot);
}

TEST(EffectiveInputTest, Examples) {
  const RobotGeometry geom;
  WheelSpeeds xi = EffectiveInput({0.5, 0.0}, {1.0, 1.0}, geom);
  EXPECT_NEAR(xi.left, 0.5 / 0.0825, kTol);
  EXPECT_NEAR(xi.right, 0.5 / 0.0825, kTol);

  xi = EffectiveInput({0.5, 0.0}, {1.6, 1.2}, geom);
  EXPECT_NEAR(xi.left, 1.6 * 0.5 / 0.0825, 1e-11);
  EXPECT_NEAR(xi.right, 1.2 * 0.5 / 0.0825, 1e-11);

  const BodyVelocity c{0.37, -0.8};
  xi = EffectiveInput(c, {1.6, 1.2}, geom);
  SlipState truth;
  truth.a_left = 1.6;
  truth.a_right = 1.2;
  const BodyVelocity back = WheelToBody(xi, truth, geom);
  EXPECT_NEAR(back.v, c.v, kTol);
  EXPECT_NEAR(back.omega, c.omega, kTol);
}

TEST(LyapunovTest, Values) {
  const ControllerGains g;
  EXPECT_EQ(LyapunovV({}, g), 0.0);
  EXPECT_NEAR(LyapunovV({1, 0, 0}, g), 0.5, kTol);
  EXPECT_NEAR(LyapunovV({0, 1, -1 / g.k3}, g),
              (1 - std::cos(1 / g.k3)) / g.k2, kTol);

  EXPECT_EQ(LyapunovVa({}, 2.0, 2.0, g), 0.0);
  const AugmentedError ea{0, 0, 0, 1.0, 0.5};
  EXPECT_NEAR(LyapunovVa(ea, 1.0, 2.0, g),
              1.0 / 6.0 + 0.25 / (2 * 3.0 * 2.0), kTol);

  EXPECT_EQ(DecayW({}, 0.3, g), 0.0);
  EXPECT_NEAR(DecayW({1, 0, 0, 0, 0}, 0.3, g), g.k1, kTol);
}

TEST(LyapunovTest, DecayBoundsRateWhenMuBelowSpeed) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const ControllerGains g;
  for (int i = 0; i < 500; ++i) {
    const AugmentedError e{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const double v_ref = 0.55 + 0.45 * u(rng);
    const double mu = 0.1;
    EXPECT_LE(DecayW(e, mu, g), -LyapunovVaRate(e.pose(), v_ref, g) + 1e-15);
  }
}

TEST(ControllerGainsTest, Validate) {
  EXPECT_NO_THROW(ControllerGains{}.Validate());
  EXPECT_THROW((ControllerGains{0, 1, 1, 1, 1}.Validate()), DomainError);
  EXPECT_THROW((ControllerGains{1, 1, 1, 0, 1}.Validate()), DomainError);
  EXPECT_NO_THROW((ControllerGains{1, 1, 1, 0, 0}.Validate(true)));
  EXPECT_NEAR(ControllerGains{}.K4(), 1 + 10 * 1.83 * 1.83, kTol);
}

}  // namespace
}  // namespace slipkin
