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

#include <array>
#include <vector>

#include "riscade/channel.hpp"
#include "riscade/correlation.hpp"
#include "riscade/linalg.hpp"

namespace riscade {

/// Correlation matrices with the design variables absorbed: the phase
/// matrices conjugate the surface-side transmit correlations and the source
/// covariance is folded into the BS-side ones,
///   t1 <- D1^H T1 D1,  t2 <- D2^H T2 D2,  ts <- D2^H Ts D2,
///   t3 <- Q^(1/2) T3 Q^(1/2),  t4 <- Q^(1/2) T4 Q^(1/2).
/// Receive-side matrices pass through unchanged.
struct TransformedProfile {
  SystemDims dims;
  CMat t1, t2, ts, t3, t4;
  CMat r1, r2, rs, r3, r4;
};

TransformedProfile apply_transforms(const CorrelationProfile& profile,
                                    const CMat& q, const PhaseConfig& phases);

/// Which update maps drive the coupled solve.
///
/// `standard` uses the stationarity form of the two inter-surface equations;
/// `printed_coupling` keeps an equivalentlooking but algebraically distinct
/// transcription of them (retained for cross-checking); `phi2_truncated`
/// deliberately drops the inter-surface component of the last equation and
/// exists only as a validation sensitivity hook.
enum class EquationSet { standard, printed_coupling, phi2_truncated };

/// The ten coupled scalars; e* live on the forward pass, te* on the return.
struct AuxiliaryState {
  double e1 = 0, e2 = 0, es = 0, e3 = 0, e4 = 0;
  double te1 = 0, te2 = 0, tes = 0, te3 = 0, te4 = 0;

  std::array<double, 10> to_array() const {
    return {e1, e2, es, e3, e4, te1, te2, tes, te3, te4};
  }
  static AuxiliaryState from_array(const std::array<double, 10>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9]};
  }
  static const std::array<const char*, 10>& names();
};

struct IterationRecord {
  int iteration = 0;
  std::array<double, 10> state{};
  double residual_norm = 0.0;
};

struct SolverSettings {
  double tolerance = 1e-5;
  int max_iterations = 2000;
  double damping = 0.5;  // in (0, 1]
  double initial_value = 1.0;
  EquationSet equations = EquationSet::standard;
  std::vector<IterationRecord>* trace = nullptr;  // optional diagnostics sink
};

/// Damped synchronous iteration of the ten update maps until the undamped
/// residual max|f(x) - x| drops below the tolerance.
///
/// Throws DivergenceError on non-finite iterates and ConvergenceError (with
/// the last residual vector attached) when the budget runs out.
AuxiliaryState solve_auxiliary(const TransformedProfile& tp,
                               double noise_power,
                               const SolverSettings& settings = {});

/// Componentwise x - f(x); the zero vector exactly at a fixed point.
std::array<double, 10> residuals(const AuxiliaryState& state,
                                 const TransformedProfile& tp,
                                 double noise_power,
                                 EquationSet equations = EquationSet::standard);

/// Per-node decomposition of the asymptotic rate (nats).
struct RateBreakdown {
  double ue_term = 0, ris1_term = 0, ris2_term = 0, bs_term = 0;
  double correction = 0;
  double total() const {
    return ue_term + ris1_term + ris2_term + bs_term - correction;
  }
};

RateBreakdown rate_breakdown(const AuxiliaryState& state,
                             const TransformedProfile& tp, double noise_power);

double rate_from_state(const AuxiliaryState& state,
                       const TransformedProfile& tp, double noise_power);

struct RateResult {
  double nats = 0.0;
  AuxiliaryState state;  // at the caller's noise scale
  int iterations = 0;
};

/// Closed-form asymptotic ergodic rate in nats.
///
/// The solve runs on a unit-noise rescaling of the system (noise power and
/// the BS-side transmit matrices carry a common factor that leaves the rate
/// invariant), which keeps the absolute tolerance meaningful for dBm-scale
/// inputs; the returned state is mapped back to the caller's scale.
RateResult asymptotic_rate_detail(const CorrelationProfile& profile,
                                  const CMat& q, const PhaseConfig& phases,
                                  double noise_power,
                                  const SolverSettings& settings = {});

double asymptotic_rate(const CorrelationProfile& profile, const CMat& q,
                       const PhaseConfig& phases, double noise_power,
                       const SolverSettings& settings = {});

}  // namespace riscade
