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
//
// Independent reference implementations used only by tests. They share no
// code path with the library routines they check.

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "riscade/channel.hpp"
#include "riscade/correlation.hpp"
#include "riscade/fixed_point.hpp"
#include "riscade/linalg.hpp"
#include "riscade/rng.hpp"

namespace riscade::test {

// Brute-force trapezoid quadrature of the angle-cluster correlation entry.
inline Complex trapezoid_cluster_integral(int lag, double spacing_wl,
                                          double mean_angle_deg,
                                          double spread_deg,
                                          long points = 2000001) {
  const double norm =
      1.0 / std::sqrt(2.0 * std::numbers::pi * spread_deg * spread_deg);
  const double h = 360.0 / static_cast<double>(points - 1);
  Complex acc(0.0, 0.0);
  for (long i = 0; i < points; ++i) {
    const double phi = -180.0 + i * h;
    const double gauss = std::exp(-(phi - mean_angle_deg) *
                                  (phi - mean_angle_deg) /
                                  (2.0 * spread_deg * spread_deg));
    const double phase = 2.0 * std::numbers::pi * spacing_wl * lag *
                         std::sin(phi * std::numbers::pi / 180.0);
    const double w = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    acc += w * gauss * Complex(std::cos(phase), std::sin(phase));
  }
  return acc * (h * norm);
}

// Effective channel assembled entry by entry with explicit loops.
inline CMat loop_effective_channel(const ChannelDraw& d,
                                   const PhaseConfig& phases) {
  const auto n = d.h1.rows();
  const auto m = d.h3.cols();
  const auto l1 = d.h1.cols();
  const auto l2 = d.h2.cols();
  CMat out = CMat::Zero(n, m);
  std::vector<Complex> c1(l1), c2(l2);
  for (Eigen::Index i = 0; i < l1; ++i)
    c1[i] = Complex(std::cos(phases.ris1[i]), std::sin(phases.ris1[i]));
  for (Eigen::Index i = 0; i < l2; ++i)
    c2[i] = Complex(std::cos(phases.ris2[i]), std::sin(phases.ris2[i]));
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) {
      Complex acc(0, 0);
      for (Eigen::Index a = 0; a < l1; ++a)
        acc += d.h1(r, a) * c1[a] * d.h3(a, c);
      for (Eigen::Index b = 0; b < l2; ++b)
        acc += d.h2(r, b) * c2[b] * d.h4(b, c);
      for (Eigen::Index a = 0; a < l1; ++a)
        for (Eigen::Index b = 0; b < l2; ++b)
          acc += d.h1(r, a) * c1[a] * d.hs(a, b) * c2[b] * d.h4(b, c);
      out(r, c) = acc;
    }
  }
  return out;
}

// log det(I + X/s2) through an LU factorization; the library route is an
// eigenvalue sum.
inline double lu_logdet_rate(const ChannelDraw& d, const PhaseConfig& phases,
                             const CMat& q, double s2) {
  const CMat h = effective_channel(d, phases);
  const CMat a = CMat::Identity(h.rows(), h.rows()) +
                 (h * q * h.adjoint()) / s2;
  return logdet_lu(a);
}

// Random Hermitian PSD matrix with a controlled trace.
inline CMat random_psd(int n, double trace, Rng& rng) {
  CMat x(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) x(r, c) = rng.cnormal();
  CMat a = x * x.adjoint() + 0.05 * double(n) * CMat::Identity(n, n);
  return a * (trace / a.trace().real());
}

// Projected-gradient ascent for max log det(I + F Q), tr Q <= P, Q PSD,
// with a Lagrangian duality-gap stopping certificate.
struct PgResult {
  double objective = 0.0;
  CMat q;
  double duality_gap = 0.0;
};

inline double pg_objective(const CMat& f, const CMat& q) {
  return logdet_identity_plus_psd(hermitize(psd_sqrt(q, "Qpg") * f *
                                            psd_sqrt(q, "Qpg")));
}

// Projection of a Hermitian matrix onto {Q >= 0, tr Q <= P}.
inline CMat project_psd_trace(const CMat& sym, double budget) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(sym));
  RVec v = es.eigenvalues().cwiseMax(0.0);
  double total = v.sum();
  if (total > budget) {
    // shift the positive part down until the clipped sum meets the budget
    double lo = 0.0, hi = v.maxCoeff();
    for (int it = 0; it < 200; ++it) {
      const double tau = 0.5 * (lo + hi);
      if ((v.array() - tau).cwiseMax(0.0).sum() > budget)
        lo = tau;
      else
        hi = tau;
    }
    v = (v.array() - hi).cwiseMax(0.0);
  }
  return es.eigenvectors() * v.asDiagonal() * es.eigenvectors().adjoint();
}

inline PgResult projected_gradient_logdet(const CMat& f, double budget,
                                          double gap_tol = 1e-6,
                                          int max_iters = 20000) {
  const int n = static_cast<int>(f.rows());
  CMat q = CMat::Identity(n, n) * (budget / n);
  double obj = pg_objective(f, q);
  double step = 1.0;
  PgResult out;
  for (int it = 0; it < max_iters; ++it) {
    const CMat grad =
        hermitize(f * (CMat::Identity(n, n) + q * f).inverse());
    // duality certificate: any iota >= lambda_max(grad on active cone)
    Eigen::SelfAdjointEigenSolver<CMat> ges(grad, Eigen::EigenvaluesOnly);
    const double iota = std::max(ges.eigenvalues().maxCoeff(), 1e-300);
    Eigen::SelfAdjointEigenSolver<CMat> fes(hermitize(f),
                                            Eigen::EigenvaluesOnly);
    double dual = iota * budget;
    for (Eigen::Index k = 0; k < fes.eigenvalues().size(); ++k) {
      const double lam = fes.eigenvalues()[k];
      if (lam > iota)  // optimal per-mode power (1/iota - 1/lam)
        dual += std::log(lam / iota) - 1.0 + iota / lam;
    }
    out.duality_gap = dual - obj;
    if (out.duality_gap < gap_tol) break;
    double trial_step = step * 2.0;
    for (; trial_step > 1e-14; trial_step *= 0.5) {
      const CMat cand = project_psd_trace(q + trial_step * grad, budget);
      const double cand_obj = pg_objective(f, cand);
      if (cand_obj > obj) {
        q = cand;
        obj = cand_obj;
        step = trial_step;
        break;
      }
    }
    if (trial_step <= 1e-14) break;  // stalled; certificate reports the gap
  }
  out.objective = obj;
  out.q = q;
  return out;
}

// Exhaustive scan of the common phase angle; meaningful only for small L.
inline double grid_search_common_phase(const CorrelationProfile& profile,
                                       const CMat& q, double noise_power,
                                       int points) {
  double best = -1e300;
  for (int i = 0; i < points; ++i) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(i) / points;
    const RVec vec =
        RVec::Constant(profile.dims.ris1_elements, theta);
    best = std::max(best, asymptotic_rate(profile, q,
                                          PhaseConfig::from_common(vec),
                                          noise_power));
  }
  return best;
}

// Identity-correlation profile with prescribed link gains; the quick way to
// desk instances with O(1) rates.
inline CorrelationProfile identity_profile(int m, int n, int l1, int l2,
                                           double g1 = 1, double g2 = 1,
                                           double gs = 1, double g3 = 1,
                                           double g4 = 1) {
  CorrelationProfile p;
  p.dims = SystemDims{m, n, l1, l2};
  p.gains = LinkGains{g1, g2, gs, g3, g4};
  p.r1 = CMat::Identity(n, n);
  p.r2 = CMat::Identity(n, n);
  p.rs = CMat::Identity(l1, l1);
  p.r3 = CMat::Identity(l1, l1);
  p.r4 = CMat::Identity(l2, l2);
  p.t1 = CMat::Identity(l1, l1) * (l1 * g1);
  p.t2 = CMat::Identity(l2, l2) * (l2 * g2);
  p.ts = CMat::Identity(l2, l2) * (l2 * gs);
  p.t3 = CMat::Identity(m, m) * g3;
  p.t4 = CMat::Identity(m, m) * g4;
  return p;
}

// Correlated profile with random PSD correlation matrices at the prescribed
// traces; exercises the solver away from identity structure.
inline CorrelationProfile random_profile(int m, int n, int l1, int l2,
                                         Rng& rng, double g1 = 1,
                                         double g2 = 1, double gs = 1,
                                         double g3 = 1, double g4 = 1) {
  CorrelationProfile p;
  p.dims = SystemDims{m, n, l1, l2};
  p.gains = LinkGains{g1, g2, gs, g3, g4};
  p.r1 = random_psd(n, n, rng);
  p.r2 = random_psd(n, n, rng);
  p.rs = random_psd(l1, l1, rng);
  p.r3 = random_psd(l1, l1, rng);
  p.r4 = random_psd(l2, l2, rng);
  p.t1 = random_psd(l1, double(l1) * l1 * g1, rng);
  p.t2 = random_psd(l2, double(l2) * l2 * g2, rng);
  p.ts = random_psd(l2, double(l2) * l2 * gs, rng);
  p.t3 = random_psd(m, m * g3, rng);
  p.t4 = random_psd(m, m * g4, rng);
  return p;
}

}  // namespace riscade::test
