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

#include "oracles.hpp"
#include "riscade/monte_carlo.hpp"

using namespace riscade;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ChannelDraw zero_draw(int n, int m, int l1, int l2) {
  ChannelDraw d;
  d.h1 = CMat::Zero(n, l1);
  d.h2 = CMat::Zero(n, l2);
  d.h3 = CMat::Zero(l1, m);
  d.h4 = CMat::Zero(l2, m);
  d.hs = CMat::Zero(l1, l2);
  return d;
}

}  // namespace

TEST_CASE("dead channel rates zero", "[monte_carlo]") {
  const ChannelDraw d = zero_draw(2, 3, 4, 4);
  const double r = instantaneous_rate(d, CMat::Identity(3, 3),
                                      PhaseConfig::identity(4, 4), 1.0);
  CHECK_THAT(r, WithinAbs(0.0, 1e-15));
}

TEST_CASE("scalar instantaneous rate closed form", "[monte_carlo]") {
  ChannelDraw d = zero_draw(1, 1, 1, 1);
  d.h1(0, 0) = 3.0;
  d.h3(0, 0) = 1.0;  // effective gain 3
  const CMat q = CMat::Identity(1, 1) * 0.7;
  const double r =
      instantaneous_rate(d, q, PhaseConfig::identity(1, 1), 1.0);
  CHECK_THAT(r, WithinRel(std::log(1.0 + 9.0 * 0.7), 1e-12));
}

TEST_CASE("instantaneous rate matches the LU log-det oracle",
          "[monte_carlo][oracle]") {
  const CorrelationProfile p = test::identity_profile(2, 2, 3, 3);
  const PhaseConfig phases = PhaseConfig::uniform_random(3, 3, false, 2);
  Rng rng(5);
  const CMat q = test::random_psd(2, 2.0, rng);
  for (int k = 0; k < 5; ++k) {
    const ChannelDraw d = sample_channel(p, 50 + k);
    const double fast = instantaneous_rate(d, q, phases, 0.8);
    const double slow = test::lu_logdet_rate(d, phases, q, 0.8);
    CHECK_THAT(fast, WithinAbs(slow, 1e-10));
    CHECK(fast >= 0.0);
  }
}

TEST_CASE("single-trial estimate equals the instantaneous rate",
          "[monte_carlo]") {
  const CorrelationProfile p = test::identity_profile(2, 2, 2, 2);
  const PhaseConfig phases = PhaseConfig::identity(2, 2);
  const CMat q = CMat::Identity(2, 2);
  McOptions mc;
  mc.trials = 1;
  mc.seed = 99;
  const McEstimate est = ergodic_rate_mc(p, q, phases, 1.0, mc);
  const ChannelDraw d =
      ChannelSampler(p).draw(Rng::substream(99, 0).next_u64());
  CHECK_THAT(est.mean_nats,
             WithinAbs(instantaneous_rate(d, q, phases, 1.0), 1e-15));
  CHECK(est.std_error == 0.0);
}

TEST_CASE("dead statistics estimate zero with zero variance", "[monte_carlo]") {
  const CorrelationProfile p = test::identity_profile(2, 2, 2, 2, 0, 0, 0, 0, 0);
  McOptions mc;
  mc.trials = 64;
  const McEstimate est = ergodic_rate_mc(p, CMat::Identity(2, 2),
                                         PhaseConfig::identity(2, 2), 1.0, mc);
  CHECK(est.mean_nats == 0.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("estimate is bit-identical across thread counts", "[monte_carlo]") {
  SystemDims dims{4, 2, 8, 8};
  const CorrelationProfile p =
      build_profile(default_geometry(dims), dims, CorrelationParams{});
  const PhaseConfig phases = PhaseConfig::identity(8, 8);
  const CMat q = CMat::Identity(4, 4);
  McEstimate ref;
  for (int threads : {1, 2, 4}) {
    McOptions mc;
    mc.trials = 500;
    mc.seed = 7;
    mc.threads = threads;
    const McEstimate est = ergodic_rate_mc(p, q, phases, 1e-9, mc);
    if (threads == 1)
      ref = est;
    else {
      CHECK(est.mean_nats == ref.mean_nats);
      CHECK(est.std_error == ref.std_error);
    }
  }
  McOptions other;
  other.trials = 500;
  other.seed = 8;
  CHECK(ergodic_rate_mc(p, q, phases, 1e-9, other).mean_nats !=
        ref.mean_nats);
}

TEST_CASE("standard error shrinks like the square root of trials",
          "[monte_carlo]") {
  const CorrelationProfile p = test::identity_profile(4, 2, 4, 4);
  const PhaseConfig phases = PhaseConfig::identity(4, 4);
  const CMat q = CMat::Identity(4, 4);
  McOptions small;
  small.trials = 1000;
  small.seed = 3;
  McOptions large;
  large.trials = 4000;
  large.seed = 3;
  const double se1 = ergodic_rate_mc(p, q, phases, 1.0, small).std_error;
  const double se2 = ergodic_rate_mc(p, q, phases, 1.0, large).std_error;
  CHECK(se2 < 0.6 * se1);
}

TEST_CASE("per-trial export matches the reported mean", "[monte_carlo]") {
  const CorrelationProfile p = test::identity_profile(2, 2, 2, 2);
  std::vector<double> rates;
  McOptions mc;
  mc.trials = 256;
  mc.seed = 12;
  mc.per_trial = &rates;
  const McEstimate est = ergodic_rate_mc(p, CMat::Identity(2, 2),
                                         PhaseConfig::identity(2, 2), 1.0, mc);
  REQUIRE(rates.size() == 256);
  double acc = 0.0;
  for (double r : rates) {
    CHECK(r >= 0.0);
    acc += r;
  }
  CHECK_THAT(est.mean_nats, WithinRel(acc / 256.0, 1e-12));
}
