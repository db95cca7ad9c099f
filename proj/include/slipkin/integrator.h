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

#ifndef SLIPKIN_INTEGRATOR_H_
#define SLIPKIN_INTEGRATOR_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace slipkin {

template <std::size_t N>
using StateVector = std::array<double, N>;

// One classical fourth-order Runge-Kutta step of x' = field(t, x).
// `field` is any callable (double, const StateVector<N>&) -> StateVector<N>.
template <std::size_t N, typename Field>
StateVector<N> IntegrateStep(Field&& field, double t, const StateVector<N>& x,
                             double h) {
  const double half = 0.5 * h;
  StateVector<N> probe;

  const StateVector<N> k1 = field(t, x);
  for (std::size_t i = 0; i < N; ++i) probe[i] = x[i] + half * k1[i];
  const StateVector<N> k2 = field(t + half, probe);
  for (std::size_t i = 0; i < N; ++i) probe[i] = x[i] + half * k2[i];
  const StateVector<N> k3 = field(t + half, probe);
  for (std::size_t i = 0; i < N; ++i) probe[i] = x[i] + h * k3[i];
  const StateVector<N> k4 = field(t + h, probe);

  StateVector<N> next;
  for (std::size_t i = 0; i < N; ++i) {
    next[i] = x[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return next;
}

// Number of steps of a uniform grid of spacing `step` covering [0, t_final].
// The last step is shortened when t_final is not a multiple of `step`.
inline long GridSteps(double t_final, double step) {
  return static_cast<long>(std::ceil(t_final / step - 1e-9));
}

// Time of grid point i, computed as i * step rather than accumulated.
inline double GridTime(long i, double t_final, double step) {
  return std::min(static_cast<double>(i) * step, t_final);
}

// Splits [t0, t1] at every breakpoint strictly inside it. Returns the
// sequence of substep end points, starting with t0 and ending with t1.
inline std::vector<double> SplitInterval(double t0, double t1,
                                         std::span<const double> breakpoints) {
  std::vector<double> points{t0};
  // Breakpoints within this tolerance of an end are treated as coincident.
  const double tol = 1e-9 * std::max(1.0, std::abs(t1));
  for (double b : breakpoints) {
    if (b > t0 + tol && b < t1 - tol) points.push_back(b);
  }
  std::sort(points.begin() + 1, points.end());
  points.push_back(t1);
  return points;
}

}  // namespace slipkin

#endif  // SLIPKIN_INTEGRATOR_H_
