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
#include "riscade/errors.hpp"
#include "riscade/water_filling.hpp"

using namespace riscade;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("isotropic objective forces uniform allocation", "[water_filling]") {
  const TransmitCovariance q = water_filling(CMat::Identity(4, 4), 2.0);
  CHECK((q.q - 0.5 * CMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THAT(q.trace(), WithinAbs(2.0, 1e-10));
  q.validate();
}

TEST_CASE("two-mode closed form", "[water_filling]") {
  CMat f = CMat::Zero(2, 2);
  f(0, 0) = 1.0;
  f(1, 1) = 0.5;
  const WaterFillingDetail detail = water_filling_detail(f, 3.0);
  // level 3: powers 3 - 1/1 = 2 and 3 - 1/0.5 = 1
  CHECK_THAT(detail.water_level, WithinRel(3.0, 1e-10));
  CHECK_THAT(detail.covariance.q(0, 0).real(), WithinAbs(2.0, 1e-10));
  CHECK_THAT(detail.covariance.q(1, 1).real(), WithinAbs(1.0, 1e-10));
}

TEST_CASE("weak modes receive no power", "[water_filling]") {
  CMat f = CMat::Zero(3, 3);
  f(0, 0) = 10.0;
  f(1, 1) = 1e-16;  // below the usable floor
  f(2, 2) = 5.0;
  const WaterFillingDetail detail = water_filling_detail(f, 0.05);
  CHECK(detail.allocations[1] == 0.0);
  CHECK_THAT(detail.covariance.trace(), WithinAbs(0.05, 1e-10));
}

TEST_CASE("degenerate objective is rejected", "[water_filling]") {
  CHECK_THROWS_AS(water_filling(CMat::Zero(3, 3), 1.0), DegenerateError);
  CHECK_THROWS_AS(water_filling(CMat::Identity(3, 3), 0.0), ConfigError);
}

TEST_CASE("allocation matches the projected-gradient oracle",
          "[water_filling][oracle]") {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const CMat f = test::random_psd(5, 5.0, rng);
    const double power = 1.0;
    const TransmitCovariance q = water_filling(f, power);
    const double obj_wf = test::pg_objective(f, q.q);
    const test::PgResult pg = test::projected_gradient_logdet(f, power);
    CHECK(obj_wf >= pg.objective - 1e-9);
    CHECK_THAT(obj_wf, WithinAbs(pg.objective, 1e-6));
    CHECK_THAT(q.trace(), WithinAbs(power, 1e-10));
  }
}

TEST_CASE("active modes share one water level", "[water_filling]") {
  Rng rng(9);
  const CMat f = test::random_psd(6, 4.0, rng);
  const WaterFillingDetail detail = water_filling_detail(f, 2.0);
  const double iota = 1.0 / detail.water_level;
  for (Eigen::Index k = 0; k < detail.mode_gains.size(); ++k) {
    const double lam = detail.mode_gains[k];
    const double alloc = detail.allocations[k];
    if (alloc > 0.0) {
      // F (I + F Q)^{-1} restricted to an active mode equals iota
      CHECK_THAT(lam / (1.0 + lam * alloc), WithinAbs(iota, 1e-8));
    } else if (lam > 1e-14) {
      CHECK(lam <= iota + 1e-8);
    }
  }
}

TEST_CASE("no feasible perturbation improves the objective",
          "[water_filling]") {
  Rng rng(13);
  const CMat f = test::random_psd(5, 5.0, rng);
  const double power = 2.0;
  const TransmitCovariance q = water_filling(f, power);
  const double base = test::pg_objective(f, q.q);
  for (int k = 0; k < 20; ++k) {
    CMat delta(5, 5);
    for (int c = 0; c < 5; ++c)
      for (int r = 0; r < 5; ++r) delta(r, c) = rng.cnormal();
    delta = hermitize(delta);
    delta -= (delta.trace().real() / 5.0) * CMat::Identity(5, 5);
    const CMat candidate =
        test::project_psd_trace(q.q + 1e-4 * delta, power);
    CHECK(test::pg_objective(f, candidate) <= base + 1e-8);
  }
}
