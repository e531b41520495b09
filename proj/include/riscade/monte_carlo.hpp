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

#include "riscade/channel.hpp"
#include "riscade/correlation.hpp"
#include "riscade/linalg.hpp"

namespace riscade {

/// log det(I + H Q H^H / s2) of one realization; nonnegative by construction.
double instantaneous_rate(const ChannelDraw& draw, const CMat& q,
                          const PhaseConfig& phases, double noise_power);

struct McEstimate {
  double mean_nats = 0.0;
  double std_error = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

struct McOptions {
  int trials = 1000;
  std::uint64_t seed = 1;
  int threads = 1;
  /// When non-null, receives the per-trial rates in trial order.
  std::vector<double>* per_trial = nullptr;
};

/// Sample mean of the instantaneous rate over seeded independent draws.
///
/// Trial t always uses substream (seed, t), and aggregation is a fixed-order
/// pairwise sum, so the estimate is bit-identical for any thread count.
McEstimate ergodic_rate_mc(const ChannelSampler& sampler, const CMat& q,
                           const PhaseConfig& phases, double noise_power,
                           const McOptions& options = {});

McEstimate ergodic_rate_mc(const CorrelationProfile& profile, const CMat& q,
                           const PhaseConfig& phases, double noise_power,
                           const McOptions& options = {});

}  // namespace riscade
