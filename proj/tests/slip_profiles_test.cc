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

#include "slipkin/slip_profiles.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "slipkin/errors.h"

namespace slipkin {
namespace {

TEST(SincTest, Values) {
  EXPECT_EQ(Sinc(0.0), 1.0);
  EXPECT_NEAR(Sinc(1e-6), 1.0, 1e-12);
  EXPECT_NEAR(Sinc(2.0), std::sin(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(Sinc(-35.0), std::sin(-35.0) / -35.0, 1e-15);
}

TEST(ConstantProfileTest, Values) {
  SlipState s = EvaluateConstant(12.0, 1.0, 1.0);
  EXPECT_EQ(s.a_left, 1.0);
  EXPECT_EQ(s.a_right, 1.0);
  EXPECT_EQ(s.sigma, 0.0);

  const SlipProfile p = SlipProfile::Constant(5.0 / 3.0, 2.5);
  for (double t : {0.0, 10.0, 70.0}) {
    s = p.Evaluate(t);
    EXPECT_EQ(s.a_left, 5.0 / 3.0);
    EXPECT_EQ(s.a_right, 2.5);
    EXPECT_EQ(s.sigma, 0.0);
    EXPECT_EQ(s.a_left_dot, 0.0);
    EXPECT_EQ(s.a_right_dot, 0.0);
  }
  EXPECT_THROW(SlipProfile::Constant(0.5, 1.0), DomainError);
}

TEST(TrainingProfileTest, Windows) {
  SlipState s = EvaluateTraining(10.0);
  EXPECT_EQ(s.a_left, 1.0);
  EXPECT_EQ(s.a_right, 1.0);
  s = EvaluateTraining(20.0);
  EXPECT_EQ(s.a_left, 5.0 / 3.0);
  EXPECT_EQ(s.a_right, 1.0);
  s = EvaluateTraining(40.0);
  EXPECT_EQ(s.a_left, 5.0 / 3.0);
  EXPECT_EQ(s.a_right, 2.5);
  s = EvaluateTraining(55.0);
  EXPECT_EQ(s.a_left, 1.0);
  EXPECT_EQ(s.a_right, 2.5);
  s = EvaluateTraining(66.0);
  EXPECT_EQ(s.a_right, 1.0);
  EXPECT_EQ(s.sigma, 0.0);

  const std::vector<double> expected{15.0, 30.0, 50.0, 65.0};
  EXPECT_EQ(SlipProfile::Training().Breakpoints(), expected);
}

TEST(TrainingProfileTest, PieceSelection) {
  const SlipProfile p = SlipProfile::Training();
  // A stage evaluated exactly at the jump uses the piece of the midpoint.
  EXPECT_EQ(p.EvaluateOnPiece(15.0, 14.9995).a_left, 1.0);
  EXPECT_EQ(p.EvaluateOnPiece(15.0, 15.0005).a_left, 5.0 / 3.0);
}

TEST(ValidationProfileTest, InitialValues) {
  const SlipState s = EvaluateValidation(0.0);
  EXPECT_NEAR(s.a_left, 1.0, 1e-12);
  EXPECT_NEAR(s.a_right, 2.5, 1e-12);
  EXPECT_NEAR(s.sigma, 3.0 * std::sin(-35.0) / -35.0, 1e-14);
}

TEST(ValidationProfileTest, SigmaPeakAndScale) {
  EXPECT_NEAR(EvaluateValidation(35.0).sigma, 3.0 * std::exp(-1.05), 1e-14);
  EXPECT_NEAR(EvaluateValidation(35.0, 0.5).sigma, 1.5 * std::exp(-1.05),
              1e-14);
  const SlipState full = EvaluateValidation(20.0);
  const SlipState quarter = EvaluateValidation(20.0, 0.25);
  EXPECT_EQ(full.a_left, quarter.a_left);
  EXPECT_EQ(full.a_right, quarter.a_right);
  EXPECT_NEAR(quarter.sigma, 0.25 * full.sigma, 1e-15);
}

TEST(ValidationProfileTest, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (double t = 0.5; t <= 70.0; t += 0.37) {
    const SlipState s = EvaluateValidation(t);
    const SlipState p = EvaluateValidation(t + h);
    const SlipState m = EvaluateValidation(t - h);
    const double fd_l = (p.a_left - m.a_left) / (2 * h);
    const double fd_r = (p.a_right - m.a_right) / (2 * h);
    if (std::abs(s.a_left_dot) > 1e-9) {
      EXPECT_NEAR(fd_l, s.a_left_dot, 1e-6 * std::abs(s.a_left_dot)) << t;
    }
    if (std::abs(s.a_right_dot) > 1e-9) {
      EXPECT_NEAR(fd_r, s.a_right_dot, 1e-6 * std::abs(s.a_right_dot)) << t;
    }
  }
  const SlipState s5 = EvaluateValidation(5.0);
  const double fd5 =
      (EvaluateValidation(5.0 + h).a_left - EvaluateValidation(5.0 - h).a_left) /
      (2 * h);
  EXPECT_NEAR(fd5, s5.a_left_dot, 1e-6 * std::abs(s5.a_left_dot));
}

TEST(ValidationProfileTest, BoundsAndEnvelopes) {
  for (double t = 0.0; t <= 200.0; t += 0.01) {
    const SlipState s = EvaluateValidation(t);
    ASSERT_GE(s.a_left, 1.0) << t;
    ASSERT_GE(s.a_right, 1.0) << t;
    ASSERT_LE(std::abs(s.sigma), 3.0 * std::exp(-0.03 * t) + 1e-15) << t;
    if (t >= 60.0) {
      ASSERT_LE(std::abs(s.a_right - 2.5),
                0.6 * std::exp(-0.08 * 60.0) / 0.4 * 2.5 * 2.5)
          << t;
    }
  }
}

TEST(MaxSlipParamsTest, Profiles) {
  EXPECT_EQ(MaxSlipParams(SlipProfile::Constant(5.0 / 3.0, 2.5), 70.0), 2.5);
  EXPECT_EQ(MaxSlipParams(SlipProfile::Training(), 70.0), 2.5);
  const double coarse = MaxSlipParams(SlipProfile::Validation(), 70.0, 1e-3);
  const double fine = MaxSlipParams(SlipProfile::Validation(), 70.0, 1e-4);
  EXPECT_GE(fine, coarse);
  EXPECT_NEAR(fine, coarse, 1e-6);
}

TEST(TableProfileTest, InterpolationAndValidation) {
  const SlipProfile p = SlipProfile::FromTable(
      {{0.0, 1.0, 2.0, 0.0}, {10.0, 2.0, 2.0, 0.5}, {20.0, 2.0, 1.0, 0.0}});
  SlipState s = p.Evaluate(5.0);
  EXPECT_NEAR(s.a_left, 1.5, 1e-14);
  EXPECT_NEAR(s.a_right, 2.0, 1e-14);
  EXPECT_NEAR(s.sigma, 0.25, 1e-14);
  EXPECT_NEAR(s.a_left_dot, 0.1, 1e-12);
  s = p.Evaluate(15.0);
  EXPECT_NEAR(s.a_right, 1.5, 1e-14);
  EXPECT_NEAR(s.a_right_dot, -0.1, 1e-12);
  // Clamped beyond the table ends.
  EXPECT_NEAR(p.Evaluate(-1.0).a_right, 2.0, 1e-14);
  EXPECT_NEAR(p.Evaluate(30.0).a_left, 2.0, 1e-14);

  EXPECT_THROW(SlipProfile::FromTable({}), DomainError);
  EXPECT_THROW(
      SlipProfile::FromTable({{0.0, 1.0, 1.0, 0.0}, {0.0, 1.0, 1.0, 0.0}}),
      DomainError);
  EXPECT_THROW(SlipProfile::FromTable({{0.0, 0.9, 1.0, 0.0}}), DomainError);
}

TEST(TableProfileTest, LoadCsv) {
  const auto path =
      std::filesystem::temp_directory_path() / "slipkin_table_test.csv";
  {
    std::ofstream out(path);
    out << "t,a_l,a_r,sigma\n0,1,1,0\n2,3,1.5,0.2\n";
  }
  const SlipProfile p = SlipProfile::LoadCsv(path.string());
  EXPECT_EQ(p.kind(), SlipKind::kTable);
  EXPECT_NEAR(p.Evaluate(1.0).a_left, 2.0, 1e-14);
  EXPECT_NEAR(p.Evaluate(1.0).sigma, 0.1, 1e-14);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace slipkin
