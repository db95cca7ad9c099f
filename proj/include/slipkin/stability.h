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

#ifndef SLIPKIN_STABILITY_H_
#define SLIPKIN_STABILITY_H_

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "slipkin/controller.h"
#include "slipkin/kinematics.h"
#include "slipkin/reference.h"
#include "slipkin/slip_profiles.h"

namespace slipkin {

using Matrix5 = Eigen::Matrix<double, 5, 5>;

// Operating point at which the closed loop is linearized.
struct FrozenParams {
  double v_ref = 0.0;
  double omega_ref = 0.0;
  double a_left = 1.0;
  double a_right = 1.0;
  ControllerGains gains;
  RobotGeometry geom;

  // v1 = b omega_ref + 2 v_ref.
  double V1() const { return geom.wheel_spacing * omega_ref + 2.0 * v_ref; }
  // v2 = b omega_ref - 2 v_ref.
  double V2() const { return geom.wheel_spacing * omega_ref - 2.0 * v_ref; }

  void Validate() const;
};

// Jacobian of the nominal augmented-error field at the origin, assembled
// from its closed-form 3x3 / 3x2 / 2x3 / 2x2 blocks.
Matrix5 LinearizationMatrix(const FrozenParams& p);

// Monic quintic s^5 + alpha[1] s^4 + ... + alpha[5]; alpha[0] == 1.
struct Quintic {
  std::array<double, 6> alpha{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
};

// Closed-form characteristic-polynomial coefficients of LinearizationMatrix.
Quintic CharPolyCoeffs(const FrozenParams& p);

enum class Verdict { kStable, kMarginal, kUnstable };

const char* VerdictName(Verdict verdict);

// Values of the Lienard-Chipart conditions (second form) for a quintic.
struct LienardChipartResult {
  Verdict verdict = Verdict::kUnstable;
  double alpha1 = 0.0;
  double alpha3 = 0.0;
  double alpha5 = 0.0;
  double c2 = 0.0;  // alpha1 alpha2 - alpha3
  double c3 = 0.0;  // fourth Hurwitz determinant
};

// Stable iff alpha1, alpha3, alpha5, c2, c3 all exceed `margin`; marginal
// iff all are non-negative but some do not exceed it; unstable otherwise.
// A positive margin keeps the roots bounded away from the imaginary axis.
LienardChipartResult LienardChipart(const Quintic& q, double margin = 0.0);

// Leading principal minors Delta_1..Delta_5 of the 5x5 Hurwitz matrix.
std::array<double, 5> HurwitzDeterminants(const Quintic& q);

// Roots of the quintic via eigenvalues of its companion matrix.
std::vector<std::complex<double>> PolynomialRoots(const Quintic& q);

// Largest real part among the eigenvalues of a 5x5 matrix.
double MaxRealEigenvalue(const Matrix5& a);

// Pointwise check of the lower bounds used to establish positivity of the
// Lienard-Chipart conditions along the reference.
struct MarginReport {
  bool preconditions_hold = false;  // v_ref >= mu1, |2v_ref +- b w| >= mu2
  std::array<double, 5> alpha{};    // alpha1..alpha5
  bool alphas_positive = false;
  double c2 = 0.0;
  double c2_chain_bound = 0.0;  // k1^2 k4 v_ref / (2 k3)
  double c2_v_bound = 0.0;      // v_ref k1^2 sqrt(k2)
  double c2_mu_bound = 0.0;     // mu1 k1^2 sqrt(k2)
  bool c2_bound_holds = false;  // c2 > chain >= v bound >= mu bound
  double alpha3_bound = 0.0;    // v_ref^2 k2 k1 / 2
  bool alpha3_bound_holds = false;
  double c3 = 0.0;
  bool c3_positive = false;
};

MarginReport SufficientMargins(const FrozenParams& p, double mu1, double mu2);

struct ScanSample {
  double t = 0.0;
  FrozenParams params;
  Quintic poly;
  LienardChipartResult criterion;
  double max_re_lambda = 0.0;
  // max |d a_ij / dt| by central differences with dt = 1e-3 s.
  double max_abs_a_dot = 0.0;
  // Frozen analysis is undefined when v_ref vanishes.
  bool flagged = false;
};

// Frozen-time stability of the linearized closed loop at every trajectory
// sample.
std::vector<ScanSample> StabilityScan(const ReferenceTrajectory& trajectory,
                                      const SlipProfile& slip,
                                      const ControllerGains& gains,
                                      const RobotGeometry& geom,
                                      double margin = 0.0);

void WriteStabilityCsv(const std::vector<ScanSample>& scan, std::ostream& out);

}  // namespace slipkin

#endif  // SLIPKIN_STABILITY_H_
