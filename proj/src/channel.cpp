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

#include "riscade/channel.hpp"

#include <cmath>
#include <numbers>

#include "riscade/errors.hpp"
#include "riscade/rng.hpp"

namespace riscade {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RVec wrap_phases(RVec theta) {
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    theta[i] = std::fmod(theta[i], kTwoPi);
    if (theta[i] < 0.0) theta[i] += kTwoPi;
  }
  return theta;
}

CVec unit_coefficients(const RVec& theta) {
  CVec c(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i)
    c[i] = Complex(std::cos(theta[i]), std::sin(theta[i]));
  return c;
}

// W with i.i.d. CN(0, 1/norm_dim) entries, column-major fill order.
CMat iid_matrix(Eigen::Index rows, Eigen::Index cols, double norm_dim,
                Rng& rng) {
  CMat w(rows, cols);
  const double scale = 1.0 / std::sqrt(norm_dim);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) w(r, c) = scale * rng.cnormal();
  return w;
}

}  // namespace

PhaseConfig PhaseConfig::identity(int l1, int l2) {
  PhaseConfig p;
  p.ris1 = RVec::Zero(l1);
  p.ris2 = RVec::Zero(l2);
  p.common = l1 == l2;
  return p;
}

PhaseConfig PhaseConfig::uniform_random(int l1, int l2, bool common,
                                        std::uint64_t seed) {
  if (common && l1 != l2)
    throw ConfigError("common phase configuration requires L1 == L2");
  Rng rng = Rng::substream(seed, 0x9035);
  PhaseConfig p;
  p.common = common;
  p.ris1 = RVec(l1);
  for (int i = 0; i < l1; ++i) p.ris1[i] = rng.uniform(0.0, kTwoPi);
  if (common) {
    p.ris2 = p.ris1;
  } else {
    p.ris2 = RVec(l2);
    for (int i = 0; i < l2; ++i) p.ris2[i] = rng.uniform(0.0, kTwoPi);
  }
  return p;
}

PhaseConfig PhaseConfig::from_common(const RVec& theta) {
  PhaseConfig p;
  p.ris1 = wrap_phases(theta);
  p.ris2 = p.ris1;
  p.common = true;
  return p;
}

void PhaseConfig::validate() const {
  if (common && (ris1.size() != ris2.size() || ris1 != ris2))
    throw ConfigError("common flag set but the two phase vectors differ");
  for (const auto& v : {ris1, ris2})
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (!(v[i] >= 0.0 && v[i] < kTwoPi))
        throw ConfigError("phase outside [0, 2*pi) at index " +
                          std::to_string(i));
}

CVec PhaseConfig::coefficients1() const { return unit_coefficients(ris1); }
CVec PhaseConfig::coefficients2() const { return unit_coefficients(ris2); }

std::uint64_t PhaseConfig::hash() const {
  std::uint64_t h = fnv1a(&common, sizeof(common));
  if (ris1.size())
    h = fnv1a(ris1.data(), sizeof(double) * ris1.size(), h);
  if (ris2.size())
    h = fnv1a(ris2.data(), sizeof(double) * ris2.size(), h);
  return h;
}

ChannelSampler::ChannelSampler(const CorrelationProfile& profile)
    : dims_(profile.dims) {
  r1_sqrt_ = psd_sqrt(profile.r1, "R1");
  r2_sqrt_ = psd_sqrt(profile.r2, "R2");
  rs_sqrt_ = psd_sqrt(profile.rs, "Rs");
  r3_sqrt_ = psd_sqrt(profile.r3, "R3");
  r4_sqrt_ = psd_sqrt(profile.r4, "R4");
  t1_sqrt_ = psd_sqrt(profile.t1, "T1");
  t2_sqrt_ = psd_sqrt(profile.t2, "T2");
  ts_sqrt_ = psd_sqrt(profile.ts, "Ts");
  t3_sqrt_ = psd_sqrt(profile.t3, "T3");
  t4_sqrt_ = psd_sqrt(profile.t4, "T4");
}

ChannelDraw ChannelSampler::draw(std::uint64_t seed) const {
  const int m = dims_.bs_antennas;
  const int n = dims_.ue_antennas;
  const int l1 = dims_.ris1_elements;
  const int l2 = dims_.ris2_elements;
  // One substream per link: zeroing a link never shifts the others' draws.
  Rng g1 = Rng::substream(seed, 1);
  Rng g2 = Rng::substream(seed, 2);
  Rng g3 = Rng::substream(seed, 3);
  Rng g4 = Rng::substream(seed, 4);
  Rng gs = Rng::substream(seed, 5);
  ChannelDraw d;
  d.h1 = r1_sqrt_ * iid_matrix(n, l1, l1, g1) * t1_sqrt_;
  d.h2 = r2_sqrt_ * iid_matrix(n, l2, l2, g2) * t2_sqrt_;
  d.h3 = r3_sqrt_ * iid_matrix(l1, m, m, g3) * t3_sqrt_;
  d.h4 = r4_sqrt_ * iid_matrix(l2, m, m, g4) * t4_sqrt_;
  d.hs = rs_sqrt_ * iid_matrix(l1, l2, l2, gs) * ts_sqrt_;
  return d;
}

ChannelDraw sample_channel(const CorrelationProfile& profile,
                           std::uint64_t seed) {
  return ChannelSampler(profile).draw(seed);
}

CMat effective_channel(const ChannelDraw& draw, const PhaseConfig& phases) {
  if (phases.ris1.size() != draw.h1.cols() ||
      phases.ris2.size() != draw.h2.cols())
    throw ConfigError("phase vector length does not match element count");
  const CVec c1 = phases.coefficients1();
  const CVec c2 = phases.coefficients2();
  const CMat reflected1 = c1.asDiagonal() * draw.h3;        // L1 x M
  const CMat via_ris2 = c2.asDiagonal() * draw.h4;          // L2 x M
  return draw.h1 * reflected1 + draw.h2 * via_ris2 +
         draw.h1 * (c1.asDiagonal() * (draw.hs * via_ris2));
}

}  // namespace riscade
