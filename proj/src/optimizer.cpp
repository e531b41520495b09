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

#include "riscade/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "riscade/errors.hpp"
#include "riscade/parallel.hpp"
#include "riscade/rng.hpp"

namespace riscade {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

PhaseConfig phases_from_vector(const RVec& position, bool common, int l1,
                               int l2) {
  PhaseConfig p;
  p.common = common;
  if (common) {
    p.ris1 = position;
    p.ris2 = position;
  } else {
    p.ris1 = position.head(l1);
    p.ris2 = position.tail(l2);
  }
  return p;
}

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

}  // namespace

QOptResult optimize_q(const CorrelationProfile& profile,
                      const PhaseConfig& phases, double noise_power,
                      double power, const SolverSettings& solver,
                      int max_outer) {
  if (power <= 0.0) throw ConfigError("power budget must be positive");
  const auto start = std::chrono::steady_clock::now();
  const int m = profile.dims.bs_antennas;

  QOptResult out;
  out.covariance = TransmitCovariance::uniform(m, power);
  RateResult current =
      asymptotic_rate_detail(profile, out.covariance.q, phases, noise_power,
                             solver);
  out.rate_nats = current.nats;
  out.trace.push_back({0, current.nats, matrix_hash(out.covariance.q),
                       phases.hash(), elapsed_ms(start)});

  for (int outer = 1; outer <= max_outer; ++outer) {
    const CMat f =
        current.state.te3 * profile.t3 + current.state.te4 * profile.t4;
    TransmitCovariance candidate;
    try {
      candidate = water_filling(f, power);
    } catch (const DegenerateError&) {
      break;  // dead BS side; the uniform start is as good as anything
    }
    const RateResult next = asymptotic_rate_detail(profile, candidate.q,
                                                   phases, noise_power,
                                                   solver);
    const double change = next.nats - out.rate_nats;
    if (next.nats > out.rate_nats) {
      out.covariance = candidate;
      out.rate_nats = next.nats;
    }
    out.trace.push_back({outer, out.rate_nats,
                         matrix_hash(out.covariance.q), phases.hash(),
                         elapsed_ms(start)});
    current = next;
    if (std::abs(change) < solver.tolerance) return out;
  }
  if (static_cast<int>(out.trace.size()) > max_outer) {
    std::vector<double> tail;
    for (const auto& e : out.trace) tail.push_back(e.rate_nats);
    throw ConvergenceError("covariance design did not settle within " +
                               std::to_string(max_outer) + " outer iterations",
                           tail);
  }
  return out;
}

PsoResult pso_phases(const CorrelationProfile& profile, const CMat& q,
                     double noise_power, const PsoSettings& pso, bool common,
                     const SolverSettings& solver) {
  const int l1 = profile.dims.ris1_elements;
  const int l2 = profile.dims.ris2_elements;
  if (common && l1 != l2)
    throw ConfigError("common phase search requires L1 == L2");
  if (pso.swarm_size < 2) throw ConfigError("swarm needs at least 2 particles");
  if (pso.inertia <= 0.0 || pso.cognitive <= 0.0 || pso.social <= 0.0)
    throw ConfigError("PSO coefficients must be positive");
  const int dim = common ? l1 : l1 + l2;
  constexpr double kFail = -std::numeric_limits<double>::infinity();

  const auto fitness = [&](const RVec& position) {
    try {
      return asymptotic_rate(
          profile, q, phases_from_vector(position, common, l1, l2),
          noise_power, solver);
    } catch (const Error&) {
      return kFail;
    }
  };

  PsoResult best;
  best.rate_nats = kFail;
  best.initial_best_nats = kFail;

  for (int restart = 0; restart < std::max(1, pso.restarts); ++restart) {
    Rng rng = Rng::substream(pso.seed, 0x9507, restart);
    std::vector<RVec> position(pso.swarm_size), velocity(pso.swarm_size);
    std::vector<RVec> local_best(pso.swarm_size);
    std::vector<double> fit(pso.swarm_size), local_best_fit(pso.swarm_size);
    for (int i = 0; i < pso.swarm_size; ++i) {
      position[i] = RVec(dim);
      velocity[i] = RVec(dim);
      for (int d = 0; d < dim; ++d) {
        position[i][d] = rng.uniform(0.0, kTwoPi);
        velocity[i][d] =
            rng.uniform(-pso.velocity_clamp, pso.velocity_clamp);
      }
    }
    parallel_for(position.size(), pso.threads,
                 [&](std::size_t lo, std::size_t hi) {
                   for (std::size_t i = lo; i < hi; ++i)
                     fit[i] = fitness(position[i]);
                 });
    RVec global_best;
    double global_best_fit = kFail;
    for (int i = 0; i < pso.swarm_size; ++i) {
      local_best[i] = position[i];
      local_best_fit[i] = fit[i];
      if (fit[i] > global_best_fit) {
        global_best_fit = fit[i];
        global_best = position[i];
      }
    }
    best.initial_best_nats = std::max(best.initial_best_nats, global_best_fit);
    if (global_best_fit == kFail)
      throw NumericalError("every initial particle failed to evaluate");

    for (int iter = 0; iter < pso.iterations; ++iter) {
      // All random coefficients are drawn up front on one stream so the
      // parallel fitness pass cannot perturb the sequence.
      for (int i = 0; i < pso.swarm_size; ++i) {
        for (int d = 0; d < dim; ++d) {
          const double r1 = rng.uniform();
          const double r2 = rng.uniform();
          double v = pso.inertia * velocity[i][d] +
                     pso.cognitive * r1 * (local_best[i][d] - position[i][d]) +
                     pso.social * r2 * (global_best[d] - position[i][d]);
          v = std::clamp(v, -pso.velocity_clamp, pso.velocity_clamp);
          velocity[i][d] = v;
          position[i][d] = wrap_angle(position[i][d] + v);
        }
      }
      parallel_for(position.size(), pso.threads,
                   [&](std::size_t lo, std::size_t hi) {
                     for (std::size_t i = lo; i < hi; ++i)
                       fit[i] = fitness(position[i]);
                   });
      for (int i = 0; i < pso.swarm_size; ++i) {
        if (fit[i] > local_best_fit[i]) {
          local_best_fit[i] = fit[i];
          local_best[i] = position[i];
        }
        if (fit[i] > global_best_fit) {
          global_best_fit = fit[i];
          global_best = position[i];
        }
      }
    }
    if (global_best_fit > best.rate_nats) {
      best.rate_nats = global_best_fit;
      best.phases = phases_from_vector(global_best, common, l1, l2);
    }
  }
  return best;
}

AoResult alternating_optimize(const CorrelationProfile& profile,
                              double noise_power, double power,
                              const PsoSettings& pso,
                              const SolverSettings& solver, bool common,
                              std::uint64_t seed, int max_outer) {
  const auto start = std::chrono::steady_clock::now();
  const int m = profile.dims.bs_antennas;
  const int l1 = profile.dims.ris1_elements;
  const int l2 = profile.dims.ris2_elements;

  AoResult out;
  out.phases = PhaseConfig::uniform_random(l1, l2, common, seed);
  if (power <= 0.0) {
    out.covariance = TransmitCovariance{CMat::Zero(m, m), 0.0};
    out.rate_nats = 0.0;
    out.trace.push_back({0, 0.0, matrix_hash(out.covariance.q),
                         out.phases.hash(), elapsed_ms(start)});
    return out;
  }
  out.covariance = TransmitCovariance::uniform(m, power);
  out.rate_nats = asymptotic_rate(profile, out.covariance.q, out.phases,
                                  noise_power, solver);
  out.trace.push_back({0, out.rate_nats, matrix_hash(out.covariance.q),
                       out.phases.hash(), elapsed_ms(start)});

  for (int outer = 1; outer <= max_outer; ++outer) {
    const double previous = out.rate_nats;

    QOptResult q_step =
        optimize_q(profile, out.phases, noise_power, power, solver);
    if (q_step.rate_nats > out.rate_nats) {
      out.covariance = q_step.covariance;
      out.rate_nats = q_step.rate_nats;
    }

    PsoSettings step_pso = pso;
    step_pso.seed = Rng::substream(pso.seed, 0xa0, outer).next_u64();
    PsoResult phase_step = pso_phases(profile, out.covariance.q, noise_power,
                                      step_pso, common, solver);
    // Randomized search can come back worse; keep the previous phases then.
    if (phase_step.rate_nats > out.rate_nats) {
      out.phases = phase_step.phases;
      out.rate_nats = phase_step.rate_nats;
    }

    out.trace.push_back({outer, out.rate_nats, matrix_hash(out.covariance.q),
                         out.phases.hash(), elapsed_ms(start)});
    if (std::abs(out.rate_nats - previous) < solver.tolerance) return out;
  }
  std::vector<double> tail;
  for (const auto& e : out.trace) tail.push_back(e.rate_nats);
  throw ConvergenceError("alternating design did not settle within " +
                             std::to_string(max_outer) + " outer iterations",
                         tail);
}

}  // namespace riscade
