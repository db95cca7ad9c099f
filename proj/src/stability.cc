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

#include "slipkin/stability.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "slipkin/csv.h"
#include "slipkin/errors.h"

namespace slipkin {
namespace {

constexpr double kStationaryThreshold = 1e-12;
constexpr double kRateDt = 1e-3;

FrozenParams ParamsAt(double t, const SlipProfile& slip,
                      const ControllerGains& gains, const RobotGeometry& geom) {
  const ReferenceInput in = ReferenceInputAt(t);
  const SlipState s = slip.Evaluate(t);
  return {in.v, in.omega, s.a_left, s.a_right, gains, geom};
}

}  // namespace

void FrozenParams::Validate() const {
  SlipState{a_left, a_right}.Validate();
  gains.Validate(/*allow_zero_rates=*/true);
  geom.Validate();
}

Matrix5 LinearizationMatrix(const FrozenParams& p) {
  const ControllerGains& g = p.gains;
  const double b = p.geom.wheel_spacing;
  const double v = p.v_ref;
  const double w = p.omega_ref;
  const double v1 = p.V1();
  const double v2 = p.V2();
  const double k4 = g.K4();
  const double al = p.a_left;
  const double ar = p.a_right;

  Matrix5 a = Matrix5::Zero();
  // A11
  a(0, 0) = -g.k1;
  a(0, 1) = w;
  a(0, 2) = g.k3 * w;
  a(1, 0) = -w;
  a(1, 2) = v;
  a(2, 1) = -0.5 * g.k2 * v;
  a(2, 2) = -k4 * v / (2.0 * g.k3);
  // A12
  const double s12 = 1.0 / (4.0 * b * al * ar);
  a(0, 3) = s12 * b * ar * v2;
  a(0, 4) = -s12 * b * al * v1;
  a(2, 3) = -s12 * 2.0 * ar * v2;
  a(2, 4) = -s12 * 2.0 * al * v1;
  // A21
  const double s21 = 1.0 / (4.0 * b * g.k2);
  a(3, 0) = -s21 * b * g.k2 * g.gamma1 * v2;
  a(3, 1) = s21 * 2.0 * g.k2 * g.k3 * g.gamma1 * v2;
  a(3, 2) = s21 * 2.0 * g.gamma1 * k4 * v2;
  a(4, 0) = s21 * b * g.k2 * g.gamma2 * v1;
  a(4, 1) = s21 * 2.0 * g.k2 * g.k3 * g.gamma2 * v1;
  a(4, 2) = s21 * 2.0 * g.gamma2 * k4 * v1;
  // A22 is zero.
  return a;
}

Quintic CharPolyCoeffs(const FrozenParams& p) {
  const ControllerGains& g = p.gains;
  const double k1 = g.k1, k2 = g.k2, k3 = g.k3, k4 = g.K4();
  const double g1 = g.gamma1, g2 = g.gamma2;
  const double b = p.geom.wheel_spacing, b2 = b * b;
  const double v = p.v_ref, w = p.omega_ref;
  const double al = p.a_left, ar = p.a_right;
  const double v1s = p.V1() * p.V1();
  const double v2s = p.V2() * p.V2();

  Quintic q;
  q.alpha[1] = k1 + k4 * v / (2.0 * k3);

  q.alpha[2] =
      (al * (g2 * v1s * k3 * (b2 * k2 + 4.0 * k4) +
             8.0 * ar * b2 * k2 *
                 (v * (k1 * k4 + k2 * k3 * v) + 2.0 * k3 * w * w)) +
       ar * g1 * v2s * k3 * (b2 * k2 + 4.0 * k4)) /
      (16.0 * al * ar * b2 * k2 * k3);

  const double shared3 =
      k2 * v * (k3 * k3 * (b2 * k2 + 8.0) + b2) + 8.0 * k1 * k3 * k4;
  q.alpha[3] = (ar * (16.0 * al * b2 * k2 * v * (k1 * k2 * k3 * v + w * w) +
                      g1 * v2s * shared3) +
                al * g2 * v1s * shared3) /
               (32.0 * al * ar * b2 * k2 * k3);

  const double plus = b * k2 * v + 2.0 * w;
  const double minus = b * k2 * v - 2.0 * w;
  const double common4 = 4.0 * w * w + 8.0 * k1 * k2 * k3 * v;
  q.alpha[4] = (g2 * v1s * (al * (plus * plus + common4) + 2.0 * v2s * g1 * k4) +
                ar * g1 * v2s * (minus * minus + common4)) /
               (32.0 * al * ar * b2 * k2);

  q.alpha[5] = g1 * g2 * k3 * v * v1s * v2s / (16.0 * al * ar * b2);
  return q;
}

const char* VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kStable:
      return "stable";
    case Verdict::kMarginal:
      return "marginal";
    case Verdict::kUnstable:
      return "unstable";
  }
  return "unknown";
}

LienardChipartResult LienardChipart(const Quintic& q, double margin) {
  const auto& a = q.alpha;
  LienardChipartResult r;
  r.alpha1 = a[1];
  r.alpha3 = a[3];
  r.alpha5 = a[5];
  r.c2 = a[1] * a[2] - a[3];
  r.c3 = r.c2 * (a[3] * a[4] - a[2] * a[5]) -
         (a[1] * a[4] - a[5]) * (a[1] * a[4] - a[5]);

  const double values[] = {r.alpha1, r.alpha3, r.alpha5, r.c2, r.c3};
  const bool all_above =
      std::all_of(std::begin(values), std::end(values),
                  [margin](double x) { return x > margin; });
  const bool all_nonneg = std::all_of(std::begin(values), std::end(values),
                                      [](double x) { return x >= 0.0; });
  r.verdict = all_above    ? Verdict::kStable
              : all_nonneg ? Verdict::kMarginal
                           : Verdict::kUnstable;
  return r;
}

std::array<double, 5> HurwitzDeterminants(const Quintic& q) {
  auto coeff = [&q](int k) { return (k < 0 || k > 5) ? 0.0 : q.alpha[k]; };
  Matrix5 h;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      // One-based H_ij = alpha_{2j - i}.
      h(i, j) = coeff(2 * (j + 1) - (i + 1));
    }
  }
  std::array<double, 5> minors{};
  minors[0] = h(0, 0);
  minors[1] = h.topLeftCorner<2, 2>().determinant();
  minors[2] = h.topLeftCorner<3, 3>().determinant();
  minors[3] = h.topLeftCorner<4, 4>().determinant();
  minors[4] = h.determinant();
  return minors;
}

std::vector<std::complex<double>> PolynomialRoots(const Quintic& q) {
  Matrix5 companion = Matrix5::Zero();
  for (int j = 0; j < 5; ++j) companion(0, j) = -q.alpha[j + 1] / q.alpha[0];
  for (int i = 1; i < 5; ++i) companion(i, i - 1) = 1.0;
  Eigen::EigenSolver<Matrix5> solver(companion, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < 5; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

double MaxRealEigenvalue(const Matrix5& a) {
  Eigen::EigenSolver<Matrix5> solver(a, /*computeEigenvectors=*/false);
  return solver.eigenvalues().real().maxCoeff();
}

MarginReport SufficientMargins(const FrozenParams& p, double mu1, double mu2) {
  const ControllerGains& g = p.gains;
  const double b = p.geom.wheel_spacing;
  MarginReport m;
  m.preconditions_hold = p.v_ref >= mu1 &&
                         std::abs(2.0 * p.v_ref + b * p.omega_ref) >= mu2 &&
                         std::abs(2.0 * p.v_ref - b * p.omega_ref) >= mu2;
  const Quintic q = CharPolyCoeffs(p);
  for (int i = 0; i < 5; ++i) m.alpha[i] = q.alpha[i + 1];
  m.alphas_positive = std::all_of(m.alpha.begin(), m.alpha.end(),
                                  [](double a) { return a > 0.0; });

  const LienardChipartResult lc = LienardChipart(q);
  const double k1_sq = g.k1 * g.k1;
  m.c2 = lc.c2;
  m.c2_chain_bound = k1_sq * g.K4() * p.v_ref / (2.0 * g.k3);
  m.c2_v_bound = p.v_ref * k1_sq * std::sqrt(g.k2);
  m.c2_mu_bound = mu1 * k1_sq * std::sqrt(g.k2);
  m.c2_bound_holds = m.c2 > m.c2_chain_bound &&
                     m.c2_chain_bound >= m.c2_v_bound &&
                     m.c2_v_bound >= m.c2_mu_bound;
  m.alpha3_bound = p.v_ref * p.v_ref * g.k2 * g.k1 / 2.0;
  m.alpha3_bound_holds = m.alpha[2] >= m.alpha3_bound;
  m.c3 = lc.c3;
  m.c3_positive = lc.c3 > 0.0;
  return m;
}

std::vector<ScanSample> StabilityScan(const ReferenceTrajectory& trajectory,
                                      const SlipProfile& slip,
                                      const ControllerGains& gains,
                                      const RobotGeometry& geom,
                                      double margin) {
  std::vector<ScanSample> scan;
  scan.reserve(trajectory.size());
  for (const ReferenceSample& sample : trajectory) {
    ScanSample out;
    out.t = sample.t;
    out.params = ParamsAt(sample.t, slip, gains, geom);
    out.poly = CharPolyCoeffs(out.params);
    out.criterion = LienardChipart(out.poly, margin);
    const Matrix5 a = LinearizationMatrix(out.params);
    out.max_re_lambda = MaxRealEigenvalue(a);

    const double lo = std::max(0.0, sample.t - kRateDt);
    const double hi = sample.t + kRateDt;
    const Matrix5 a_dot =
        (LinearizationMatrix(ParamsAt(hi, slip, gains, geom)) -
         LinearizationMatrix(ParamsAt(lo, slip, gains, geom))) /
        (hi - lo);
    out.max_abs_a_dot = a_dot.cwiseAbs().maxCoeff();
    out.flagged = !(out.params.v_ref > kStationaryThreshold);
    scan.push_back(out);
  }
  return scan;
}

void WriteStabilityCsv(const std::vector<ScanSample>& scan,
                       std::ostream& out) {
  out << "t,alpha1,alpha2,alpha3,alpha4,alpha5,c2,c3,maxReLambda,verdict,"
         "flag\n";
  for (const ScanSample& s : scan) {
    out << FormatDouble(s.t);
    for (int i = 1; i <= 5; ++i) out << ',' << FormatDouble(s.poly.alpha[i]);
    out << ',' << FormatDouble(s.criterion.c2) << ','
        << FormatDouble(s.criterion.c3) << ',' << FormatDouble(s.max_re_lambda)
        << ',' << (s.flagged ? "unjudged" : VerdictName(s.criterion.verdict))
        << ',' << (s.flagged ? 1 : 0) << '\n';
  }
}

}  // namespace slipkin
