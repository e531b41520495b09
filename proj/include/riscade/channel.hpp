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

#include "riscade/correlation.hpp"
#include "riscade/linalg.hpp"

namespace riscade {

/// Per-element reflection phases of both surfaces, in [0, 2*pi).
struct PhaseConfig {
  RVec ris1;
  RVec ris2;
  bool common = false;

  static PhaseConfig identity(int l1, int l2);
  static PhaseConfig uniform_random(int l1, int l2, bool common,
                                    std::uint64_t seed);
  /// Common configuration from a single phase vector (L1 == L2 == size).
  static PhaseConfig from_common(const RVec& theta);

  void validate() const;
  /// Unit-modulus reflection coefficients exp(j*theta) of surface 1 / 2.
  CVec coefficients1() const;
  CVec coefficients2() const;
  std::uint64_t hash() const;
};

/// One realization of the five fading links.
///
/// h1: RIS1->user (N x L1)     h2: RIS2->user (N x L2)
/// h3: BS->RIS1  (L1 x M)      h4: BS->RIS2  (L2 x M)
/// hs: RIS2->RIS1 (L1 x L2)
struct ChannelDraw {
  CMat h1, h2, h3, h4, hs;
};

/// Draws correlated Rayleigh realizations h = R^(1/2) W T^(1/2) with i.i.d.
/// complex-normal W scaled by the per-link normalization dimension
/// (L1, L2, M, M, L2 for links 1, 2, 3, 4, s).
///
/// The square-root factors are computed once at construction; draws are pure
/// functions of the seed, so a sampler can be shared across threads.
class ChannelSampler {
 public:
  explicit ChannelSampler(const CorrelationProfile& profile);

  ChannelDraw draw(std::uint64_t seed) const;

  const SystemDims& dims() const { return dims_; }

 private:
  SystemDims dims_;
  CMat r1_sqrt_, r2_sqrt_, rs_sqrt_, r3_sqrt_, r4_sqrt_;
  CMat t1_sqrt_, t2_sqrt_, ts_sqrt_, t3_sqrt_, t4_sqrt_;
};

/// Convenience one-shot draw; prefer ChannelSampler in loops.
ChannelDraw sample_channel(const CorrelationProfile& profile,
                           std::uint64_t seed);

/// H1 D1 H3 + H2 D2 H4 + H1 D1 Hs D2 H4 with Di = diag(exp(j theta_i)).
CMat effective_channel(const ChannelDraw& draw, const PhaseConfig& phases);

}  // namespace riscade
