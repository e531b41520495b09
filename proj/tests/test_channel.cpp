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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "riscade/channel.hpp"
#include "riscade/errors.hpp"

using namespace riscade;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("scalar link has the prescribed variance", "[channel]") {
  const CorrelationProfile p = test::identity_profile(1, 1, 1, 1);
  const ChannelSampler sampler(p);
  const int draws = 100000;
  double acc = 0.0;
  for (int i = 0; i < draws; ++i)
    acc += std::norm(sampler.draw(i).h1(0, 0));
  // E|h1|^2 = tr(R1) tr(T1) / L1 = 1
  CHECK_THAT(acc / draws, WithinRel(1.0, 0.02));
}

TEST_CASE("zero transmit correlation annihilates the link", "[channel]") {
  CorrelationProfile p = test::identity_profile(2, 2, 3, 3);
  p.t1.setZero();
  const ChannelDraw d = sample_channel(p, 42);
  CHECK(d.h1.cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.h2.cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("draws are bit-identical for a repeated seed", "[channel]") {
  SystemDims dims{4, 2, 8, 8};
  const CorrelationProfile p =
      build_profile(default_geometry(dims), dims, CorrelationParams{});
  const ChannelSampler sampler(p);
  const ChannelDraw a = sampler.draw(123);
  const ChannelDraw b = sampler.draw(123);
  const ChannelDraw c = sampler.draw(124);
  CHECK(a.h1 == b.h1);
  CHECK(a.hs == b.hs);
  CHECK(a.h1 != c.h1);
}

TEST_CASE("Frobenius norms meet the Kronecker targets", "[channel]") {
  Rng rng(5);
  const CorrelationProfile p = test::random_profile(4, 2, 4, 4, rng);
  const ChannelSampler sampler(p);
  const int draws = 10000;
  // targets: tr(R) tr(T) / D with D = L1, L2, M, M, L2
  const double target[5] = {
      p.r1.trace().real() * p.t1.trace().real() / 4.0,
      p.r2.trace().real() * p.t2.trace().real() / 4.0,
      p.r3.trace().real() * p.t3.trace().real() / 4.0,
      p.r4.trace().real() * p.t4.trace().real() / 4.0,
      p.rs.trace().real() * p.ts.trace().real() / 4.0};
  double mean[5] = {};
  double second[5] = {};
  for (int i = 0; i < draws; ++i) {
    const ChannelDraw d = sampler.draw(1000 + i);
    const double v[5] = {d.h1.squaredNorm(), d.h2.squaredNorm(),
                         d.h3.squaredNorm(), d.h4.squaredNorm(),
                         d.hs.squaredNorm()};
    for (int k = 0; k < 5; ++k) {
      mean[k] += v[k];
      second[k] += v[k] * v[k];
    }
  }
  for (int k = 0; k < 5; ++k) {
    mean[k] /= draws;
    const double var = second[k] / draws - mean[k] * mean[k];
    const double se = std::sqrt(var / draws);
    CHECK(std::abs(mean[k] - target[k]) < 3.0 * se);
  }
}

TEST_CASE("effective channel on all-ones scalars", "[channel]") {
  ChannelDraw d;
  d.h1 = CMat::Ones(1, 1);
  d.h2 = CMat::Ones(1, 1);
  d.h3 = CMat::Ones(1, 1);
  d.h4 = CMat::Ones(1, 1);
  d.hs = CMat::Ones(1, 1);
  const CMat h = effective_channel(d, PhaseConfig::identity(1, 1));
  CHECK_THAT(h(0, 0).real(), WithinAbs(3.0, 1e-15));

  d.h2.setZero();
  d.h4.setZero();
  d.hs.setZero();
  const CMat h1_only = effective_channel(d, PhaseConfig::identity(1, 1));
  CHECK_THAT(h1_only(0, 0).real(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("effective channel matches the loop oracle", "[channel]") {
  const CorrelationProfile p = test::identity_profile(2, 2, 2, 2);
  const ChannelDraw d = sample_channel(p, 7);
  const PhaseConfig phases = PhaseConfig::uniform_random(2, 2, false, 9);
  const CMat fast = effective_channel(d, phases);
  const CMat slow = test::loop_effective_channel(d, phases);
  CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("effective channel is linear in each hop", "[channel]") {
  const CorrelationProfile p = test::identity_profile(3, 2, 4, 4);
  ChannelDraw d = sample_channel(p, 11);
  d.h2.setZero();
  d.hs.setZero();  // isolate the first term
  const PhaseConfig phases = PhaseConfig::uniform_random(4, 4, false, 3);
  const CMat base = effective_channel(d, phases);
  ChannelDraw scaled = d;
  scaled.h3 *= 2.5;
  const CMat doubled = effective_channel(scaled, phases);
  CHECK((doubled - 2.5 * base).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("phase coefficients are unit modulus", "[channel]") {
  const PhaseConfig p = PhaseConfig::uniform_random(16, 16, true, 77);
  p.validate();
  for (const CVec& c : {p.coefficients1(), p.coefficients2()})
    for (Eigen::Index i = 0; i < c.size(); ++i)
      CHECK_THAT(std::abs(c[i]), WithinAbs(1.0, 1e-15));
  for (Eigen::Index i = 0; i < p.ris1.size(); ++i) {
    CHECK(p.ris1[i] >= 0.0);
    CHECK(p.ris1[i] < 2.0 * std::numbers::pi);
  }
  CHECK(p.ris1 == p.ris2);  // common flag ties the two surfaces
}

TEST_CASE("common phase configuration rejects mismatched vectors",
          "[channel]") {
  PhaseConfig p = PhaseConfig::uniform_random(4, 4, true, 1);
  p.ris2[2] += 0.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  CHECK_THROWS_AS(PhaseConfig::uniform_random(4, 6, true, 1), ConfigError);
}

TEST_CASE("non-PSD correlation is reported by name", "[channel]") {
  CorrelationProfile p = test::identity_profile(2, 2, 2, 2);
  p.ts(0, 0) = -1.0;
  try {
    ChannelSampler sampler(p);
    FAIL("expected MatrixError");
  } catch (const MatrixError& e) {
    CHECK(std::string(e.what()).find("Ts") != std::string::npos);
  }
}
