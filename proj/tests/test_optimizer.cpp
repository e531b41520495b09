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
#include "riscade/optimizer.hpp"

using namespace riscade;
using Catch::Matchers::WithinAbs;

namespace {

PsoSettings small_pso(std::uint64_t seed) {
  PsoSettings pso;
  pso.swarm_size = 12;
  pso.iterations = 15;
  pso.seed = seed;
  return pso;
}

}  // namespace

TEST_CASE("isotropic BS statistics keep the uniform covariance",
          "[optimizer]") {
  const CorrelationProfile p = test::identity_profile(4, 2, 4, 4);
  const QOptResult r =
      optimize_q(p, PhaseConfig::identity(4, 4), 1.0, 2.0);
  CHECK((r.covariance.q - 0.5 * CMat::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-8);
  CHECK_THAT(r.covariance.trace(), WithinAbs(2.0, 1e-9));
}

TEST_CASE("vanishing budget gives a vanishing rate", "[optimizer]") {
  const CorrelationProfile p = test::identity_profile(4, 2, 4, 4);
  const QOptResult r =
      optimize_q(p, PhaseConfig::identity(4, 4), 1.0, 1e-9);
  CHECK(r.rate_nats < 1e-6);
  CHECK(r.covariance.trace() <= 1e-9 + 1e-18);
}

TEST_CASE("covariance design beats uniform on a correlated instance",
          "[optimizer]") {
  Rng rng(71);
  const CorrelationProfile p = test::random_profile(6, 3, 6, 6, rng);
  const PhaseConfig phases = PhaseConfig::identity(6, 6);
  const double uniform_rate = asymptotic_rate(
      p, TransmitCovariance::uniform(6, 6.0).q, phases, 1.0);
  const QOptResult r = optimize_q(p, phases, 1.0, 6.0);
  CHECK(r.rate_nats > uniform_rate + 1e-3);
  // recorded trace never decreases beyond the solver tolerance
  for (std::size_t i = 1; i < r.trace.size(); ++i)
    CHECK(r.trace[i].rate_nats >= r.trace[i - 1].rate_nats - 1e-5);
}

TEST_CASE("single-element phase search matches the grid oracle",
          "[optimizer][oracle]") {
  Rng rng(81);
  CorrelationProfile p = test::random_profile(3, 2, 1, 1, rng);
  const CMat q = test::random_psd(3, 2.0, rng);
  const PsoResult r = pso_phases(p, q, 1.0, small_pso(5), true);
  const double grid_best = test::grid_search_common_phase(p, q, 1.0, 3600);
  CHECK(std::abs(r.rate_nats - grid_best) < 1e-3);
}

TEST_CASE("phase-invariant swarm collapses to one fitness", "[optimizer]") {
  const CorrelationProfile p = test::identity_profile(3, 2, 4, 4, 1.2, 0.8, 1.5);
  const CMat q = CMat::Identity(3, 3);
  const PsoResult r = pso_phases(p, q, 1.0, small_pso(6), true);
  CHECK(std::abs(r.rate_nats - r.initial_best_nats) < 1e-8);
}

TEST_CASE("returned phases are feasible and improve on the initial swarm",
          "[optimizer]") {
  Rng rng(91);
  const CorrelationProfile p = test::random_profile(3, 2, 4, 4, rng);
  const CMat q = CMat::Identity(3, 3);
  const PsoResult r = pso_phases(p, q, 1.0, small_pso(7), false);
  r.phases.validate();
  CHECK(r.phases.ris1.size() == 4);
  CHECK(r.rate_nats >= r.initial_best_nats - 1e-12);
  for (const CVec& c : {r.phases.coefficients1(), r.phases.coefficients2()})
    for (Eigen::Index i = 0; i < c.size(); ++i)
      CHECK_THAT(std::abs(c[i]), WithinAbs(1.0, 1e-15));
}

TEST_CASE("swarm fitness evaluation is thread-count independent",
          "[optimizer]") {
  Rng rng(95);
  const CorrelationProfile p = test::random_profile(3, 2, 3, 3, rng);
  const CMat q = CMat::Identity(3, 3);
  PsoSettings a = small_pso(11);
  PsoSettings b = small_pso(11);
  b.threads = 4;
  const PsoResult ra = pso_phases(p, q, 1.0, a, true);
  const PsoResult rb = pso_phases(p, q, 1.0, b, true);
  CHECK(ra.rate_nats == rb.rate_nats);
  CHECK(ra.phases.ris1 == rb.phases.ris1);
}

TEST_CASE("alternating design converges in one step without phase coupling",
          "[optimizer]") {
  const CorrelationProfile p = test::identity_profile(4, 2, 4, 4);
  const AoResult r =
      alternating_optimize(p, 1.0, 4.0, small_pso(13), SolverSettings{}, true, 5);
  // initial entry, the productive step, and the stopping step
  CHECK(r.trace.size() <= 3);
  REQUIRE(r.trace.size() >= 2);
  const double last_change =
      r.trace.back().rate_nats - r.trace[r.trace.size() - 2].rate_nats;
  CHECK(std::abs(last_change) < 1e-5);
}

TEST_CASE("zero power returns immediately", "[optimizer]") {
  const CorrelationProfile p = test::identity_profile(4, 2, 4, 4);
  const AoResult r =
      alternating_optimize(p, 1.0, 0.0, small_pso(17), SolverSettings{}, true, 5);
  CHECK(r.rate_nats == 0.0);
  CHECK(r.trace.size() == 1);
  CHECK(r.covariance.trace() == 0.0);
}

TEST_CASE("joint design dominates the single-variable designs",
          "[optimizer]") {
  Rng rng(101);
  const CorrelationProfile p = test::random_profile(4, 2, 6, 6, rng);
  const double power = 4.0;
  const PhaseConfig random_phases = PhaseConfig::uniform_random(6, 6, true, 3);
  const CMat uniform_q = TransmitCovariance::uniform(4, power).q;

  const double baseline = asymptotic_rate(p, uniform_q, random_phases, 1.0);
  const double q_only =
      optimize_q(p, random_phases, 1.0, power).rate_nats;
  const double phases_only =
      pso_phases(p, uniform_q, 1.0, small_pso(19), true).rate_nats;
  const AoResult joint = alternating_optimize(p, 1.0, power, small_pso(19),
                                              SolverSettings{}, true, 3);

  CHECK(q_only >= baseline - 1e-9);
  CHECK(phases_only >= baseline - 1e-9);
  CHECK(joint.rate_nats >= q_only - 1e-6);
  CHECK(joint.rate_nats >= phases_only - 1e-6);
  for (std::size_t i = 1; i < joint.trace.size(); ++i)
    CHECK(joint.trace[i].rate_nats >= joint.trace[i - 1].rate_nats - 1e-5);
}

TEST_CASE("per-surface search is at least as good as the common one",
          "[optimizer]") {
  Rng rng(111);
  const CorrelationProfile p = test::random_profile(2, 2, 2, 2, rng);
  const CMat q = CMat::Identity(2, 2);
  PsoSettings pso = small_pso(0);
  pso.swarm_size = 8;
  pso.iterations = 10;
  std::vector<double> common_rates, split_rates;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    pso.seed = seed;
    common_rates.push_back(pso_phases(p, q, 1.0, pso, true).rate_nats);
    split_rates.push_back(pso_phases(p, q, 1.0, pso, false).rate_nats);
  }
  auto mean_sd = [](const std::vector<double>& v) {
    double m = 0, s = 0;
    for (double x : v) m += x;
    m /= v.size();
    for (double x : v) s += (x - m) * (x - m);
    return std::pair<double, double>{m, std::sqrt(s / (v.size() - 1))};
  };
  const auto [mc, sc] = mean_sd(common_rates);
  const auto [ms, ss] = mean_sd(split_rates);
  const double noise = 2.0 * std::sqrt(sc * sc + ss * ss);
  CHECK(ms >= mc - noise - 1e-9);
}
