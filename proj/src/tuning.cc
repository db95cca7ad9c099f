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

#include "slipkin/tuning.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <Eigen/Dense>

#include "slipkin/csv.h"
#include "slipkin/errors.h"

namespace slipkin {
namespace {

double Integrand(const LogRow& row, ControllerMode mode,
                 const CostWeights& weights, const RobotGeometry& geom) {
  const Eigen::Vector3d e(row.error.e1, row.error.e2, row.error.e3);
  WheelSpeeds dxi;
  if (mode == ControllerMode::kNonAdaptive) {
    const BodyVelocity diff{row.command.v - row.reference.v,
                            row.command.omega - row.reference.omega};
    dxi = BodyToWheel(diff, 1.0, 1.0, geom);
  } else {
    const WheelSpeeds ref = BodyToWheel(row.reference.eta(), row.slip.a_left,
                                        row.slip.a_right, geom);
    dxi = {row.wheels.left - ref.left, row.wheels.right - ref.right};
  }
  const Eigen::Vector2d d(dxi.left, dxi.right);
  return e.dot(weights.q * e) + d.dot(weights.r * d);
}

std::size_t IndexOf(const std::vector<double>& values, double value) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - value) <= 1e-9 * std::max(1.0, std::abs(value))) {
      return i;
    }
  }
  throw DomainError("value " + FormatDouble(value) + " is not on the grid");
}

}  // namespace

void CostWeights::Validate() const {
  if (!q.isApprox(q.transpose()) || !r.isApprox(r.transpose())) {
    throw DomainError("cost weights must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> qs(q);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> rs(r);
  if (!(qs.eigenvalues().minCoeff() > 0.0)) {
    throw DomainError("Q must be positive definite");
  }
  if (rs.eigenvalues().minCoeff() < -1e-12) {
    throw DomainError("R must be positive semidefinite");
  }
}

double CostF(const TrajectoryLog& log, const CostWeights& weights,
             const RobotGeometry& geom, double t_end) {
  double total = 0.0;
  if (log.rows.empty()) return total;
  double previous = Integrand(log.rows.front(), log.mode, weights, geom);
  for (std::size_t i = 1; i < log.rows.size(); ++i) {
    if (log.rows[i].t > t_end) break;
    const double current = Integrand(log.rows[i], log.mode, weights, geom);
    total += 0.5 * (previous + current) * (log.rows[i].t - log.rows[i - 1].t);
    previous = current;
  }
  return total;
}

std::vector<double> LogGrid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) {
    throw DomainError("log grid needs 0 < lo <= hi and n >= 1");
  }
  std::vector<double> values;
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < n; ++i) {
    const double x = n == 1 ? a : a + (b - a) * i / (n - 1);
    values.push_back(std::pow(10.0, x));
  }
  return values;
}

void TuningSpec::Validate() const {
  if (k1_values.empty() || k2_values.empty() || k3_values.empty()) {
    throw DomainError("tuning grid must be nonempty on every axis");
  }
  for (const auto* axis : {&k1_values, &k2_values, &k3_values}) {
    for (double v : *axis) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError("tuning grid values must be positive");
      }
    }
  }
  weights.Validate();
  SimulationConfig probe = scenario;
  probe.mode = mode;
  probe.gains = {k1_values.front(), k2_values.front(), k3_values.front(),
                 gamma1, gamma2};
  probe.Validate();
}

TuningSpec TuningSpec::DefaultAdaptive(double step) {
  TuningSpec spec;
  spec.mode = ControllerMode::kAdaptive;
  spec.k1_values = spec.k2_values = spec.k3_values = LogGrid(0.1, 10.0, 20);
  spec.scenario.mode = ControllerMode::kAdaptive;
  spec.scenario.slip = SlipProfile::Training();
  spec.scenario.step = step;
  return spec;
}

TuningSpec TuningSpec::DefaultNonAdaptive(double step) {
  TuningSpec spec = DefaultAdaptive(step);
  spec.mode = ControllerMode::kNonAdaptive;
  spec.scenario.mode = ControllerMode::kNonAdaptive;
  spec.scenario.slip = SlipProfile();
  return spec;
}

double EvaluateGains(const TuningSpec& spec, double k1, double k2, double k3) {
  SimulationConfig config = spec.scenario;
  config.mode = spec.mode;
  config.gains = {k1, k2, k3, spec.gamma1, spec.gamma2};
  try {
    const TrajectoryLog log = Simulate(config);
    const double cost = CostF(log, spec.weights, config.geom);
    return std::isfinite(cost) ? cost
                               : std::numeric_limits<double>::infinity();
  } catch (const NumericError&) {
    return std::numeric_limits<double>::infinity();
  }
}

TuningResult GridSearch(const TuningSpec& spec, int jobs) {
  spec.Validate();
  TuningResult result;
  result.mode = spec.mode;
  result.k1_values = spec.k1_values;
  result.k2_values = spec.k2_values;
  result.k3_values = spec.k3_values;
  result.shape = {spec.k1_values.size(), spec.k2_values.size(),
                  spec.k3_values.size()};
  const std::size_t total = result.shape[0] * result.shape[1] * result.shape[2];
  result.table.resize(total);
  for (std::size_t i1 = 0; i1 < result.shape[0]; ++i1) {
    for (std::size_t i2 = 0; i2 < result.shape[1]; ++i2) {
      for (std::size_t i3 = 0; i3 < result.shape[2]; ++i3) {
        auto& entry = result.table[(i1 * result.shape[1] + i2) *
                                       result.shape[2] +
                                   i3];
        entry.k1 = spec.k1_values[i1];
        entry.k2 = spec.k2_values[i2];
        entry.k3 = spec.k3_values[i3];
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < total; i = next++) {
      TuningEntry& entry = result.table[i];
      entry.cost = EvaluateGains(spec, entry.k1, entry.k2, entry.k3);
    }
  };
  const int threads = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();

  std::size_t best = total;
  for (std::size_t i = 0; i < total; ++i) {
    const TuningEntry& e = result.table[i];
    if (!std::isfinite(e.cost)) continue;
    if (best == total) {
      best = i;
      continue;
    }
    const TuningEntry& b = result.table[best];
    if (e.cost < b.cost ||
        (e.cost == b.cost && std::tie(e.k1, e.k2, e.k3) <
                                 std::tie(b.k1, b.k2, b.k3))) {
      best = i;
    }
  }
  if (best == total) return result;
  const TuningEntry& b = result.table[best];
  result.best_cost = b.cost;
  result.best_gains = {b.k1, b.k2, b.k3, spec.gamma1, spec.gamma2};
  if (spec.mode == ControllerMode::kNonAdaptive) {
    result.best_gains.gamma1 = result.best_gains.gamma2 = 0.0;
  }
  result.best_index = {best / (result.shape[1] * result.shape[2]),
                       (best / result.shape[2]) % result.shape[1],
                       best % result.shape[2]};
  return result;
}

CostSlice CostSurfaceSlice(const TuningResult& result, int fixed_axis,
                           double fixed_value) {
  if (fixed_axis < 0 || fixed_axis > 2) {
    throw DomainError("fixed axis must be 0, 1 or 2");
  }
  const std::vector<double>* axes[] = {&result.k1_values, &result.k2_values,
                                       &result.k3_values};
  const std::size_t fixed = IndexOf(*axes[fixed_axis], fixed_value);
  const int row_axis = fixed_axis == 0 ? 1 : 0;
  const int col_axis = fixed_axis == 2 ? 1 : 2;

  CostSlice slice;
  slice.fixed_axis = fixed_axis;
  slice.fixed_value = (*axes[fixed_axis])[fixed];
  slice.row_values = *axes[row_axis];
  slice.col_values = *axes[col_axis];
  slice.cost.assign(slice.row_values.size(),
                    std::vector<double>(slice.col_values.size()));
  for (std::size_t i = 0; i < slice.row_values.size(); ++i) {
    for (std::size_t j = 0; j < slice.col_values.size(); ++j) {
      std::array<std::size_t, 3> index{};
      index[fixed_axis] = fixed;
      index[row_axis] = i;
      index[col_axis] = j;
      slice.cost[i][j] = result.At(index[0], index[1], index[2]).cost;
    }
  }
  return slice;
}

void WriteCostTableCsv(const TuningResult& result, std::ostream& out) {
  out << "k1,k2,k3,F\n";
  for (const TuningEntry& e : result.table) {
    const double row[] = {e.k1, e.k2, e.k3, e.cost};
    WriteCsvRow(out, row);
  }
}

void WriteCostSliceCsv(const CostSlice& slice, std::ostream& out) {
  out << "row,col,F\n";
  for (std::size_t i = 0; i < slice.row_values.size(); ++i) {
    for (std::size_t j = 0; j < slice.col_values.size(); ++j) {
      const double row[] = {slice.row_values[i], slice.col_values[j],
                            slice.cost[i][j]};
      WriteCsvRow(out, row);
    }
  }
}

CostSlice ReadCostSliceCsv(std::istream& in, int fixed_axis,
                           double fixed_value) {
  const CsvTable table = ReadCsv(in);
  const std::size_t rc = table.Column("row");
  const std::size_t cc = table.Column("col");
  const std::size_t fc = table.Column("F");
  CostSlice slice;
  slice.fixed_axis = fixed_axis;
  slice.fixed_value = fixed_value;
  for (const auto& row : table.rows) {
    if (slice.row_values.empty() || slice.row_values.back() != row[rc]) {
      slice.row_values.push_back(row[rc]);
      slice.cost.emplace_back();
    }
    if (slice.row_values.size() == 1) slice.col_values.push_back(row[cc]);
    slice.cost.back().push_back(row[fc]);
  }
  for (const auto& r : slice.cost) {
    if (r.size() != slice.col_values.size()) {
      throw std::runtime_error("ragged cost slice");
    }
  }
  return slice;
}

}  // namespace slipkin
