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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "slipkin/csv.h"
#include "slipkin/errors.h"

namespace slipkin {
namespace {

constexpr double kTrainingLeft = 5.0 / 3.0;
constexpr double kTrainingRight = 5.0 / 2.0;

double Window(double t, double start, double end, double active) {
  return (t >= start && t < end) ? active : 1.0;
}

SlipState EvaluateTable(const std::vector<SlipTableRow>& rows, double t,
                        double piece_time) {
  if (piece_time <= rows.front().t || rows.size() == 1) {
    const auto& r = rows.front();
    return {r.a_left, r.a_right, r.sigma, 0.0, 0.0};
  }
  if (piece_time >= rows.back().t) {
    const auto& r = rows.back();
    return {r.a_left, r.a_right, r.sigma, 0.0, 0.0};
  }
  auto upper = std::upper_bound(
      rows.begin(), rows.end(), piece_time,
      [](double value, const SlipTableRow& row) { return value < row.t; });
  const SlipTableRow& hi = *upper;
  const SlipTableRow& lo = *(upper - 1);
  const double dt = hi.t - lo.t;
  const double w = (t - lo.t) / dt;
  SlipState s;
  s.a_left_dot = (hi.a_left - lo.a_left) / dt;
  s.a_right_dot = (hi.a_right - lo.a_right) / dt;
  s.a_left = lo.a_left + w * (hi.a_left - lo.a_left);
  s.a_right = lo.a_right + w * (hi.a_right - lo.a_right);
  s.sigma = lo.sigma + w * (hi.sigma - lo.sigma);
  return s;
}

}  // namespace

double Sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

SlipState EvaluateConstant(double /*t*/, double a_left, double a_right) {
  SlipState s{a_left, a_right, 0.0, 0.0, 0.0};
  s.Validate();
  return s;
}

SlipState EvaluateTraining(double t) {
  return {Window(t, 15.0, 50.0, kTrainingLeft),
          Window(t, 30.0, 65.0, kTrainingRight), 0.0, 0.0, 0.0};
}

SlipState EvaluateValidation(double t, double sigma_scale) {
  const double decay_l = 0.3 * std::exp(-0.1 * t);
  const double c = std::cos(1.1 * t);
  const double s = std::sin(1.1 * t);
  const double den_l = 0.7 + decay_l * c;
  const double den_l_dot = decay_l * (-0.1 * c - 1.1 * s);

  const double u = 0.02 * t * t;
  const double su = std::sin(u);
  const double cu = std::cos(u);
  const double decay_r = 0.6 * std::exp(-0.08 * t);
  const double den_r = 0.4 + decay_r * su * su;
  // d/dt sin^2(u) = 2 sin(u) cos(u) u', with u' = 0.04 t.
  const double den_r_dot = decay_r * (-0.08 * su * su + 0.08 * t * su * cu);

  SlipState state;
  state.a_left = 1.0 / den_l;
  state.a_right = 1.0 / den_r;
  state.a_left_dot = -den_l_dot / (den_l * den_l);
  state.a_right_dot = -den_r_dot / (den_r * den_r);
  state.sigma = sigma_scale * 3.0 * std::exp(-0.03 * t) * Sinc(t - 35.0);
  return state;
}

SlipProfile SlipProfile::Constant(double a_left, double a_right) {
  SlipState{a_left, a_right}.Validate();
  SlipProfile p;
  p.kind_ = SlipKind::kConstant;
  p.a_left_ = a_left;
  p.a_right_ = a_right;
  return p;
}

SlipProfile SlipProfile::Training() {
  SlipProfile p;
  p.kind_ = SlipKind::kTraining;
  return p;
}

SlipProfile SlipProfile::Validation(double sigma_scale) {
  if (!std::isfinite(sigma_scale)) {
    throw DomainError("sigma scale must be finite");
  }
  SlipProfile p;
  p.kind_ = SlipKind::kValidation;
  p.sigma_scale_ = sigma_scale;
  return p;
}

SlipProfile SlipProfile::FromTable(std::vector<SlipTableRow> rows) {
  if (rows.empty()) throw DomainError("slip table is empty");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SlipState{rows[i].a_left, rows[i].a_right, rows[i].sigma}.Validate();
    if (!std::isfinite(rows[i].t)) throw DomainError("slip table t not finite");
    if (i > 0 && !(rows[i].t > rows[i - 1].t)) {
      throw DomainError("slip table t must be strictly increasing (row " +
                        std::to_string(i + 1) + ")");
    }
  }
  SlipProfile p;
  p.kind_ = SlipKind::kTable;
  p.table_ = std::move(rows);
  return p;
}

SlipProfile SlipProfile::LoadCsv(const std::string& path) {
  CsvTable csv = ReadCsvFile(path);
  const std::size_t t = csv.Column("t");
  const std::size_t al = csv.Column("a_l");
  const std::size_t ar = csv.Column("a_r");
  const std::size_t sigma = csv.Column("sigma");
  std::vector<SlipTableRow> rows;
  rows.reserve(csv.rows.size());
  for (const auto& row : csv.rows) {
    rows.push_back({row[t], row[al], row[ar], row[sigma]});
  }
  return FromTable(std::move(rows));
}

SlipState SlipProfile::EvaluateOnPiece(double t, double piece_time) const {
  switch (kind_) {
    case SlipKind::kConstant:
      return {a_left_, a_right_, 0.0, 0.0, 0.0};
    case SlipKind::kTraining:
      return EvaluateTraining(piece_time);
    case SlipKind::kValidation:
      return EvaluateValidation(t, sigma_scale_);
    case SlipKind::kTable:
      return EvaluateTable(table_, t, piece_time);
  }
  return {};
}

std::vector<double> SlipProfile::Breakpoints() const {
  if (kind_ == SlipKind::kTraining) return {15.0, 30.0, 50.0, 65.0};
  return {};
}

double MaxSlipParams(const SlipProfile& profile, double horizon,
                     double grid_step) {
  if (!(horizon > 0.0) || !(grid_step > 0.0)) {
    throw DomainError("horizon and grid step must be positive");
  }
  const auto n = static_cast<long>(std::ceil(horizon / grid_step));
  double best = 1.0;
  for (long i = 0; i <= n; ++i) {
    const double t = std::min(horizon, static_cast<double>(i) * grid_step);
    const SlipState s = profile.Evaluate(t);
    best = std::max({best, s.a_left, s.a_right});
  }
  return best;
}

}  // namespace slipkin
