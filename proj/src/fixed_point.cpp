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

#include "riscade/fixed_point.hpp"

#include <cmath>
#include <string>

#include "riscade/errors.hpp"

namespace riscade {
namespace {

// tr(X * Y) without forming the product.
double trace_product(const CMat& x, const CMat& y) {
  return x.cwiseProduct(y.transpose()).sum().real();
}

struct Updates {
  std::array<double, 10> value{};
};

// One synchronous evaluation of all ten right-hand sides.
Updates evaluate(const std::array<double, 10>& x, const TransformedProfile& tp,
                 double noise_power, EquationSet equations) {
  const double e1 = x[0], e2 = x[1], es = x[2], e3 = x[3], e4 = x[4];
  const double te1 = x[5], te2 = x[6], tes = x[7], te3 = x[8], te4 = x[9];
  const double l1 = tp.dims.ris1_elements;
  const double l2 = tp.dims.ris2_elements;
  const double m = tp.dims.bs_antennas;
  const Eigen::Index nl1 = tp.t1.rows(), nl2 = tp.t2.rows(),
                     nm = tp.t3.rows(), nn = tp.r1.rows();

  // User side: cn = s2 I + e1 R1 + e2 R2.
  const CMat cn = noise_power * CMat::Identity(nn, nn) + e1 * tp.r1 +
                  e2 * tp.r2;
  const Eigen::PartialPivLU<CMat> cn_lu(cn);
  const double d1 = cn_lu.solve(tp.r1).trace().real();
  const double d2 = cn_lu.solve(tp.r2).trace().real();

  // Surface 2 side: k2 = I + (tes Ts + te2 T2) e4 R4.
  const CMat k2 = CMat::Identity(nl2, nl2) +
                  (tes * tp.ts + te2 * tp.t2) * (e4 * tp.r4);
  const Eigen::PartialPivLU<CMat> k2_lu(k2);
  const double b2 = trace_product(k2_lu.solve(tp.t2), tp.r4);
  const double bs = trace_product(k2_lu.solve(tp.ts), tp.r4);

  // BS side: km = I + te3 T3 + te4 T4.
  const CMat km =
      CMat::Identity(nm, nm) + te3 * tp.t3 + te4 * tp.t4;
  const Eigen::PartialPivLU<CMat> km_lu(km);
  const double c3 = km_lu.solve(tp.t3).trace().real();
  const double c4 = km_lu.solve(tp.t4).trace().real();

  Updates out;
  out.value[1] = e4 * b2 / l2;   // e2
  out.value[2] = e4 * bs / l2;   // es
  out.value[3] = c3 / m;         // e3
  out.value[4] = c4 / m;         // e4
  out.value[5] = d1 / l1;        // te1
  out.value[6] = d2 / l2;        // te2
  out.value[9] = equations == EquationSet::phi2_truncated
                     ? te2 * b2 / m
                     : (tes * bs + te2 * b2) / m;  // te4

  if (equations == EquationSet::printed_coupling) {
    // Literal transcription of the inter-surface coupling, kept for
    // cross-checks; factors are deliberately not simplified.
    const CMat t1_rs = tp.t1 * (es * tp.rs);
    const CMat t1_r3 = tp.t1 * (e3 * tp.r3);
    const CMat identity = CMat::Identity(nl1, nl1);
    const CMat psi_inv = (identity + te1 * t1_rs).inverse();
    const CMat factor = identity - te1 * t1_rs * psi_inv;
    const CMat omega_inv = (identity + te1 * factor * t1_r3).inverse();
    const CMat tail = factor * t1_r3 - t1_rs * psi_inv * (te1 * t1_r3);
    out.value[0] = ((psi_inv * t1_rs).trace().real() +
                    (omega_inv * tail).trace().real()) /
                   l1;  // e1
    const CMat xi =
        -(te1 * tp.t1 * tp.rs) * psi_inv * (te1 * t1_r3);
    out.value[7] = ((psi_inv * (te1 * tp.t1 * tp.rs)).trace().real() +
                    (omega_inv * xi).trace().real()) /
                   l2;  // tes
    out.value[8] =
        (omega_inv * factor * (te1 * tp.t1 * tp.r3)).trace().real() / m;
  } else {
    // Surface 1 side: k1 = I + te1 T1 (es Rs + e3 R3).
    const CMat k1 = CMat::Identity(nl1, nl1) +
                    te1 * tp.t1 * (es * tp.rs + e3 * tp.r3);
    const Eigen::PartialPivLU<CMat> k1_lu(k1);
    const CMat a1 = k1_lu.solve(tp.t1);
    const double as = trace_product(a1, tp.rs);
    const double a3 = trace_product(a1, tp.r3);
    out.value[0] = (es * as + e3 * a3) / l1;  // e1
    out.value[7] = te1 * as / l2;             // tes
    out.value[8] = te1 * a3 / m;              // te3
  }
  return out;
}

std::array<double, 10> subtract(const std::array<double, 10>& a,
                                const std::array<double, 10>& b) {
  std::array<double, 10> r{};
  for (int i = 0; i < 10; ++i) r[i] = a[i] - b[i];
  return r;
}

double inf_norm(const std::array<double, 10>& a) {
  double v = 0.0;
  for (double x : a) v = std::max(v, std::abs(x));
  return v;
}

bool all_finite(const std::array<double, 10>& a) {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

const std::array<const char*, 10>& AuxiliaryState::names() {
  static const std::array<const char*, 10> n = {
      "e1", "e2", "es", "e3", "e4", "te1", "te2", "tes", "te3", "te4"};
  return n;
}

TransformedProfile apply_transforms(const CorrelationProfile& profile,
                                    const CMat& q, const PhaseConfig& phases) {
  if (q.rows() != profile.dims.bs_antennas || q.rows() != q.cols())
    throw ConfigError("source covariance must be M x M");
  if (phases.ris1.size() != profile.dims.ris1_elements ||
      phases.ris2.size() != profile.dims.ris2_elements)
    throw ConfigError("phase vector length does not match element count");
  const CMat q_sqrt = psd_sqrt(q, "Q");
  const CVec c1 = phases.coefficients1();
  const CVec c2 = phases.coefficients2();
  TransformedProfile tp;
  tp.dims = profile.dims;
  tp.t1 = hermitize(c1.conjugate().asDiagonal() * profile.t1 *
                    c1.asDiagonal());
  tp.t2 = hermitize(c2.conjugate().asDiagonal() * profile.t2 *
                    c2.asDiagonal());
  tp.ts = hermitize(c2.conjugate().asDiagonal() * profile.ts *
                    c2.asDiagonal());
  tp.t3 = hermitize(q_sqrt * profile.t3 * q_sqrt);
  tp.t4 = hermitize(q_sqrt * profile.t4 * q_sqrt);
  tp.r1 = profile.r1;
  tp.r2 = profile.r2;
  tp.rs = profile.rs;
  tp.r3 = profile.r3;
  tp.r4 = profile.r4;
  return tp;
}

namespace {

struct SolveOutcome {
  AuxiliaryState state;
  int iterations = 0;
};

SolveOutcome solve_impl(const TransformedProfile& tp, double noise_power,
                        const SolverSettings& settings) {
  if (noise_power <= 0.0) throw ConfigError("noise power must be positive");
  if (settings.tolerance <= 0.0) throw ConfigError("tolerance must be positive");
  if (settings.damping <= 0.0 || settings.damping > 1.0)
    throw ConfigError("damping must lie in (0, 1]");
  std::array<double, 10> x;
  x.fill(settings.initial_value);
  std::array<double, 10> res{};
  for (int it = 0; it < settings.max_iterations; ++it) {
    const Updates f = evaluate(x, tp, noise_power, settings.equations);
    if (!all_finite(f.value))
      throw DivergenceError(
          "auxiliary iteration produced non-finite values at iteration " +
          std::to_string(it) + "; try a smaller damping factor");
    res = subtract(f.value, x);
    const double norm = inf_norm(res);
    if (settings.trace) settings.trace->push_back({it, x, norm});
    if (norm < settings.tolerance)
      return {AuxiliaryState::from_array(x), it};
    for (int i = 0; i < 10; ++i) x[i] += settings.damping * res[i];
  }
  throw ConvergenceError(
      "auxiliary fixed point not reached after " +
          std::to_string(settings.max_iterations) +
          " iterations (residual " + std::to_string(inf_norm(res)) + ")",
      std::vector<double>(res.begin(), res.end()));
}

}  // namespace

AuxiliaryState solve_auxiliary(const TransformedProfile& tp,
                               double noise_power,
                               const SolverSettings& settings) {
  return solve_impl(tp, noise_power, settings).state;
}

std::array<double, 10> residuals(const AuxiliaryState& state,
                                 const TransformedProfile& tp,
                                 double noise_power, EquationSet equations) {
  const std::array<double, 10> x = state.to_array();
  const Updates f = evaluate(x, tp, noise_power, equations);
  return subtract(x, f.value);
}

RateBreakdown rate_breakdown(const AuxiliaryState& st,
                             const TransformedProfile& tp,
                             double noise_power) {
  const double l1 = tp.dims.ris1_elements;
  const double l2 = tp.dims.ris2_elements;
  const double m = tp.dims.bs_antennas;
  const Eigen::Index nl1 = tp.t1.rows(), nl2 = tp.t2.rows();
  RateBreakdown b;
  b.ue_term = logdet_identity_plus_psd(
      (st.e1 * tp.r1 + st.e2 * tp.r2) / noise_power);
  b.ris1_term = logdet_lu(CMat::Identity(nl1, nl1) +
                          st.te1 * tp.t1 * (st.es * tp.rs + st.e3 * tp.r3));
  b.ris2_term = logdet_lu(CMat::Identity(nl2, nl2) +
                          (st.tes * tp.ts + st.te2 * tp.t2) *
                              (st.e4 * tp.r4));
  b.bs_term = logdet_identity_plus_psd(st.te3 * tp.t3 + st.te4 * tp.t4);
  b.correction = l1 * st.e1 * st.te1 + l2 * st.e2 * st.te2 +
                 l2 * st.es * st.tes + m * st.e3 * st.te3 +
                 m * st.e4 * st.te4;
  return b;
}

double rate_from_state(const AuxiliaryState& st, const TransformedProfile& tp,
                       double noise_power) {
  return rate_breakdown(st, tp, noise_power).total();
}

RateResult asymptotic_rate_detail(const CorrelationProfile& profile,
                                  const CMat& q, const PhaseConfig& phases,
                                  double noise_power,
                                  const SolverSettings& settings) {
  if (noise_power <= 0.0) throw ConfigError("noise power must be positive");
  TransformedProfile tp = apply_transforms(profile, q, phases);
  tp.t3 /= noise_power;
  tp.t4 /= noise_power;
  const SolveOutcome solved = solve_impl(tp, 1.0, settings);
  RateResult r;
  r.nats = rate_from_state(solved.state, tp, 1.0);
  r.iterations = solved.iterations;
  r.state = solved.state;
  r.state.e1 *= noise_power;
  r.state.e2 *= noise_power;
  r.state.es *= noise_power;
  r.state.e3 *= noise_power;
  r.state.e4 *= noise_power;
  r.state.te1 /= noise_power;
  r.state.te2 /= noise_power;
  r.state.tes /= noise_power;
  r.state.te3 /= noise_power;
  r.state.te4 /= noise_power;
  return r;
}

double asymptotic_rate(const CorrelationProfile& profile, const CMat& q,
                       const PhaseConfig& phases, double noise_power,
                       const SolverSettings& settings) {
  return asymptotic_rate_detail(profile, q, phases, noise_power, settings)
      .nats;
}

}  // namespace riscade
