// SPDX-License-Identifier: Apache-2.0
//
// riscade - cooperative double-RIS MIMO ergodic-rate analysis and design
// Copyright (C) 2026 The riscade authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "riscade/water_filling.hpp"

#include <algorithm>
#include <cmath>

#include "riscade/errors.hpp"

namespace riscade {
namespace {

constexpr double kModeFloor = 1e-14;

double poured_power(const RVec& gains, double level) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < gains.size(); ++i)
    if (gains[i] > kModeFloor)
      total += std::max(level - 1.0 / gains[i], 0.0);
  return total;
}

}  // namespace

void TransmitCovariance::validate() const {
  if (q.rows() != q.cols()) throw MatrixError("Q must be square");
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  if (hermiticity_gap(q) >= 1e-12 * scale)
    throw MatrixError("Q is not Hermitian");
  if (min_eigenvalue(q) <= -kPsdClipTolerance * scale)
    throw MatrixError("Q is not positive semi-definite");
  if (trace() > budget + 1e-8 * std::max(1.0, budget))
    throw MatrixError("tr(Q) exceeds the power budget");
}

TransmitCovariance TransmitCovariance::uniform(int m, double power) {
  if (m < 1) throw ConfigError("antenna count must be >= 1");
  if (power < 0.0) throw ConfigError("power budget must be nonnegative");
  return {CMat::Identity(m, m) * (power / m), power};
}

WaterFillingDetail water_filling_detail(const CMat& f, double power) {
  if (power <= 0.0) throw ConfigError("power budget must be positive");
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(f));
  if (es.info() != Eigen::Success)
    throw MatrixError("eigendecomposition of the objective matrix failed");
  const RVec gains = es.eigenvalues();
  if ((gains.array() <= kModeFloor).all())
    throw DegenerateError("no usable eigenmode: all gains below 1e-14");

  double lo = 0.0;
  double hi = 0.0;
  for (Eigen::Index i = 0; i < gains.size(); ++i)
    if (gains[i] > kModeFloor) hi = std::max(hi, 1.0 / gains[i]);
  hi += power;  // water never rises above this
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (poured_power(gains, mid) > power)
      hi = mid;
    else
      lo = mid;
  }
  // Exact level for the active set the bisection settled on.
  double inverse_gain_sum = 0.0;
  int active = 0;
  for (Eigen::Index i = 0; i < gains.size(); ++i) {
    if (gains[i] > kModeFloor && hi - 1.0 / gains[i] > 0.0) {
      inverse_gain_sum += 1.0 / gains[i];
      ++active;
    }
  }
  const double level = (power + inverse_gain_sum) / active;

  WaterFillingDetail out;
  out.water_level = level;
  out.mode_gains = gains;
  out.allocations = RVec::Zero(gains.size());
  for (Eigen::Index i = 0; i < gains.size(); ++i)
    if (gains[i] > kModeFloor)
      out.allocations[i] = std::max(level - 1.0 / gains[i], 0.0);
  out.covariance.q = es.eigenvectors() * out.allocations.asDiagonal() *
                     es.eigenvectors().adjoint();
  out.covariance.q = hermitize(out.covariance.q);
  out.covariance.budget = power;
  return out;
}

TransmitCovariance water_filling(const CMat& f, double power) {
  return water_filling_detail(f, power).covariance;
}

}  // namespace riscade
