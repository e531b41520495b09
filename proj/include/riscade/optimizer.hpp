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

#include <cstdint>
#include <vector>

#include "riscade/fixed_point.hpp"
#include "riscade/water_filling.hpp"

namespace riscade {

/// Constriction-factor particle swarm defaults; all knobs overridable.
struct PsoSettings {
  int swarm_size = 40;
  int iterations = 100;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  double velocity_clamp = 3.141592653589793;  // per dimension
  int restarts = 1;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct AoTraceEntry {
  int iteration = 0;
  double rate_nats = 0.0;
  std::uint64_t q_hash = 0;
  std::uint64_t phase_hash = 0;
  double wall_ms = 0.0;
};

using AoTrace = std::vector<AoTraceEntry>;

struct QOptResult {
  TransmitCovariance covariance;
  double rate_nats = 0.0;
  AoTrace trace;
};

/// Covariance design at fixed phases: alternate the auxiliary solve with
/// water-filling on F = te3 T3 + te4 T4 until the rate change drops below
/// the solver tolerance. Starts from the uniform allocation (P/M) I.
QOptResult optimize_q(const CorrelationProfile& profile,
                      const PhaseConfig& phases, double noise_power,
                      double power, const SolverSettings& solver = {},
                      int max_outer = 100);

struct PsoResult {
  PhaseConfig phases;
  double rate_nats = 0.0;
  /// Best fitness among the initial particles (monotonicity reference).
  double initial_best_nats = 0.0;
};

/// Phase design at fixed covariance via particle swarm search over
/// [0, 2*pi)^L (common) or [0, 2*pi)^(L1+L2) (per-surface) with wrap-around.
/// Particles whose rate evaluation fails score -inf instead of aborting.
PsoResult pso_phases(const CorrelationProfile& profile, const CMat& q,
                     double noise_power, const PsoSettings& pso, bool common,
                     const SolverSettings& solver = {});

struct AoResult {
  TransmitCovariance covariance;
  PhaseConfig phases;
  double rate_nats = 0.0;
  AoTrace trace;
};

/// Alternating design of covariance and phases from a seeded random phase
/// start. A phase update that does not improve the rate is rejected and the
/// previous phases kept, so the recorded rate sequence never decreases.
AoResult alternating_optimize(const CorrelationProfile& profile,
                              double noise_power, double power,
                              const PsoSettings& pso,
                              const SolverSettings& solver = {},
                              bool common = true, std::uint64_t seed = 1,
                              int max_outer = 30);

}  // namespace riscade
