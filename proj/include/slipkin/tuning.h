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

#ifndef SLIPKIN_TUNING_H_
#define SLIPKIN_TUNING_H_

#include <array>
#include <limits>
#include <ostream>
#include <vector>

#include <Eigen/Core>

#include "slipkin/controller.h"
#include "slipkin/simulator.h"

namespace slipkin {

// Weights of the tracking cost: Q on the pose error, R on the wheel-speed
// deviation from the reference wheel speeds.
struct CostWeights {
  Eigen::Matrix3d q = Eigen::Matrix3d::Identity();
  Eigen::Matrix2d r = 0.05 * Eigen::Matrix2d::Identity();

  // Q positive definite, R symmetric positive semidefinite.
  void Validate() const;
};

// Trapezoidal quadrature of e'Qe + dxi'R dxi over the log, up to `t_end`.
// AKC: dxi = Phi_hat^{-1} eta_c - Phi^{-1} eta_ref (true slip).
// NKC: dxi = Phi_0^{-1} (eta_c - eta_ref).
double CostF(const TrajectoryLog& log, const CostWeights& weights,
             const RobotGeometry& geom,
             double t_end = std::numeric_limits<double>::infinity());

// n points equally spaced in log10 between lo and hi, inclusive.
std::vector<double> LogGrid(double lo, double hi, int n);

struct TuningSpec {
  ControllerMode mode = ControllerMode::kAdaptive;
  std::vector<double> k1_values;
  std::vector<double> k2_values;
  std::vector<double> k3_values;
  double gamma1 = 3.0;
  double gamma2 = 3.0;
  CostWeights weights;
  // Everything except k1, k2, k3 (and gamma for AKC) comes from here.
  SimulationConfig scenario;

  void Validate() const;

  // 20^3 log grid on [0.1, 10]. AKC tunes under the training slip profile,
  // NKC under zero slip.
  static TuningSpec DefaultAdaptive(double step = 1e-3);
  static TuningSpec DefaultNonAdaptive(double step = 1e-3);
};

struct TuningEntry {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double cost = 0.0;  // +inf when the simulation failed
};

struct TuningResult {
  ControllerMode mode = ControllerMode::kAdaptive;
  ControllerGains best_gains;
  double best_cost = std::numeric_limits<double>::infinity();
  std::array<std::size_t, 3> best_index{};
  std::array<std::size_t, 3> shape{};
  // Row-major over (k1, k2, k3), k3 fastest.
  std::vector<TuningEntry> table;
  std::vector<double> k1_values;
  std::vector<double> k2_values;
  std::vector<double> k3_values;

  const TuningEntry& At(std::size_t i1, std::size_t i2, std::size_t i3) const {
    return table[(i1 * shape[1] + i2) * shape[2] + i3];
  }
};

// Cost of a single gain triple under `spec`.
double EvaluateGains(const TuningSpec& spec, double k1, double k2, double k3);

// Exhaustive sweep. `jobs` worker threads; results do not depend on it.
// Ties break toward the lexicographically smallest (k1, k2, k3).
TuningResult GridSearch(const TuningSpec& spec, int jobs = 1);

// Two-dimensional cut of the cost table with one gain held fixed.
// Axis 0 = k1, 1 = k2, 2 = k3.
struct CostSlice {
  int fixed_axis = 1;
  double fixed_value = 0.0;
  std::vector<double> row_values;  // first free axis
  std::vector<double> col_values;  // second free axis
  std::vector<std::vector<double>> cost;
};

CostSlice CostSurfaceSlice(const TuningResult& result, int fixed_axis,
                           double fixed_value);

void WriteCostTableCsv(const TuningResult& result, std::ostream& out);
// Long format: row_value,col_value,F.
void WriteCostSliceCsv(const CostSlice& slice, std::ostream& out);
CostSlice ReadCostSliceCsv(std::istream& in, int fixed_axis,
                           double fixed_value);

}  // namespace slipkin

#endif  // SLIPKIN_TUNING_H_
