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

#include "riscade/monte_carlo.hpp"

#include <cmath>

#include "riscade/errors.hpp"
#include "riscade/parallel.hpp"
#include "riscade/rng.hpp"

namespace riscade {

double instantaneous_rate(const ChannelDraw& draw, const CMat& q,
                          const PhaseConfig& phases, double noise_power) {
  if (noise_power <= 0.0) throw ConfigError("noise power must be positive");
  const CMat h = effective_channel(draw, phases);
  const CMat gram = hermitize(h * q * h.adjoint()) / noise_power;
  // Eigenvalue route with log1p keeps precision at very low SNR.
  Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecomposition failed in instantaneous rate");
  double rate = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    rate += std::log1p(std::max(es.eigenvalues()[i], 0.0));
  return rate;
}

McEstimate ergodic_rate_mc(const ChannelSampler& sampler, const CMat& q,
                           const PhaseConfig& phases, double noise_power,
                           const McOptions& options) {
  if (options.trials < 1) throw ConfigError("trial count must be >= 1");
  std::vector<double> rates(options.trials);
  parallel_for(static_cast<std::size_t>(options.trials), options.threads,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t t = begin; t < end; ++t) {
                   const ChannelDraw draw =
                       sampler.draw(Rng::substream(options.seed, t).next_u64());
                   rates[t] =
                       instantaneous_rate(draw, q, phases, noise_power);
                 }
               });
  McEstimate est;
  est.trials = options.trials;
  est.seed = options.seed;
  est.mean_nats = pairwise_sum(rates) / options.trials;
  if (options.trials > 1) {
    std::vector<double> sq(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i) {
      const double d = rates[i] - est.mean_nats;
      sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / (options.trials - 1);
    est.std_error = std::sqrt(var / options.trials);
  }
  if (options.per_trial) *options.per_trial = std::move(rates);
  return est;
}

McEstimate ergodic_rate_mc(const CorrelationProfile& profile, const CMat& q,
                           const PhaseConfig& phases, double noise_power,
                           const McOptions& options) {
  return ergodic_rate_mc(ChannelSampler(profile), q, phases, noise_power,
                         options);
}

}  // namespace riscade
