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

#pragma once

#include "riscade/linalg.hpp"

namespace riscade {

/// Source covariance with its trace budget.
struct TransmitCovariance {
  CMat q;
  double budget = 0.0;

  double trace() const { return q.trace().real(); }
  void validate() const;

  /// Uniform allocation (P/M) I.
  static TransmitCovariance uniform(int m, double power);
};

struct WaterFillingDetail {
  TransmitCovariance covariance;
  double water_level = 0.0;   // 1/iota
  RVec mode_gains;            // eigenvalues of the objective matrix
  RVec allocations;           // per-mode powers, same ordering
};

/// Maximizes log det(I + F Q) subject to tr Q <= P, Q PSD.
///
/// Eigendecomposes F, pours power (water_level - 1/gain)+ over the usable
/// modes (gain > 1e-14), and locates the water level by bisection refined
/// with an exact active-set solve so that tr Q = P to 1e-10.
/// All-degenerate F raises DegenerateError.
WaterFillingDetail water_filling_detail(const CMat& f, double power);

TransmitCovariance water_filling(const CMat& f, double power);

}  // namespace riscade
