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

#include "riscade/correlation.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "riscade/errors.hpp"

namespace riscade {
namespace {

constexpr double kDeg2Rad = std::numbers::pi / 180.0;

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Newton iteration on the Legendre polynomial; standard construction.
GaussLegendreRule make_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussLegendreRule& cached_rule(int n) {
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

// One off-diagonal lag of the integral model at a fixed node count.
Complex cluster_integral(int lag, double spacing_wl, double mean_angle_deg,
                         double spread_deg, int nodes) {
  const GaussLegendreRule& rule = cached_rule(nodes);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * spread_deg * spread_deg);
  Complex acc(0.0, 0.0);
  for (int i = 0; i < nodes; ++i) {
    const double phi = 180.0 * rule.nodes[i];  // degrees
    const double gauss = std::exp(-(phi - mean_angle_deg) * (phi - mean_angle_deg) /
                                  (2.0 * spread_deg * spread_deg));
    const double phase =
        2.0 * std::numbers::pi * spacing_wl * lag * std::sin(phi * kDeg2Rad);
    acc += rule.weights[i] * gauss * Complex(std::cos(phase), std::sin(phase));
  }
  return acc * (180.0 * norm);
}

CMat rescale_trace(CMat a, double target, const std::string& label) {
  const double tr = a.trace().real();
  if (target == 0.0) return CMat::Zero(a.rows(), a.cols());
  if (tr <= 0.0)
    throw MatrixError(label + " has non-positive trace " + std::to_string(tr));
  return a * (target / tr);
}

void check_matrix(const CMat& a, double trace_target, const std::string& label) {
  if (hermiticity_gap(a) >= 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff()))
    throw MatrixError(label + " is not Hermitian");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (min_eigenvalue(a) <= -kPsdClipTolerance * scale)
    throw MatrixError(label + " is not positive semi-definite");
  const double tr = a.trace().real();
  if (trace_target == 0.0) {
    if (std::abs(tr) > 1e-10) throw MatrixError(label + " should have zero trace");
  } else if (std::abs(tr - trace_target) > 1e-10 * std::abs(trace_target)) {
    throw MatrixError(label + " trace " + std::to_string(tr) +
                      " misses target " + std::to_string(trace_target));
  }
}

}  // namespace

double path_loss_linear(double distance_m, double tx_gain_dbi,
                        double rx_gain_dbi) {
  if (distance_m < 1.0)
    throw DomainError("path-loss model is calibrated for d >= 1 m (got " +
                      std::to_string(distance_m) + ")");
  const double db =
      tx_gain_dbi + rx_gain_dbi - 35.1 - 36.7 * std::log10(distance_m);
  return std::pow(10.0, db / 10.0);
}

CMat integral_correlation(int n, double spacing_wl, double mean_angle_deg,
                          double angular_spread_deg) {
  if (n < 1) throw ConfigError("integral_correlation needs n >= 1");
  if (angular_spread_deg <= 0.0)
    throw ConfigError("angular spread must be positive");
  std::vector<Complex> lags(n);
  for (int lag = 0; lag < n; ++lag) {
    Complex prev = cluster_integral(lag, spacing_wl, mean_angle_deg,
                                    angular_spread_deg, 64);
    bool converged = false;
    for (int nodes = 128; nodes <= 32768; nodes *= 2) {
      const Complex cur = cluster_integral(lag, spacing_wl, mean_angle_deg,
                                           angular_spread_deg, nodes);
      if (std::abs(cur - prev) < 1e-8) {
        prev = cur;
        converged = true;
        break;
      }
      prev = cur;
    }
    if (!converged)
      throw NumericalError("integral correlation quadrature did not converge "
                           "for lag " + std::to_string(lag));
    lags[lag] = prev;
  }
  CMat a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      a(r, c) = r >= c ? lags[r - c] : std::conj(lags[c - r]);
  return a;
}

CMat sinc_correlation(const std::vector<Vec3>& positions, double wavelength_m) {
  if (wavelength_m <= 0.0) throw ConfigError("wavelength must be positive");
  const int n = static_cast<int>(positions.size());
  if (n < 1) throw ConfigError("sinc_correlation needs at least one element");
  CMat a(n, n);
  for (int r = 0; r < n; ++r) {
    a(r, r) = 1.0;
    for (int c = r + 1; c < n; ++c) {
      const double d = distance(positions[r], positions[c]);
      if (d <= 0.0)
        throw ConfigError("duplicate element positions at indices " +
                          std::to_string(r) + " and " + std::to_string(c));
      const double x = 2.0 * d / wavelength_m;
      const double v = std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
      a(r, c) = v;
      a(c, r) = v;
    }
  }
  return a;
}

double CorrelationProfile::branch_gain_via_ris1() const {
  const double coupling = (t1 * r3).trace().real();
  return gains.bs_ris1 * coupling /
         (static_cast<double>(dims.ris1_elements) * dims.bs_antennas);
}

double CorrelationProfile::branch_gain_via_ris2() const {
  const double coupling = (t2 * r4).trace().real();
  return gains.bs_ris2 * coupling /
         (static_cast<double>(dims.ris2_elements) * dims.bs_antennas);
}

void CorrelationProfile::validate() const {
  dims.validate();
  const double n = dims.ue_antennas;
  const double m = dims.bs_antennas;
  const double l1 = dims.ris1_elements;
  const double l2 = dims.ris2_elements;
  check_matrix(r1, n, "R1");
  check_matrix(r2, n, "R2");
  check_matrix(rs, l1, "Rs");
  check_matrix(r3, l1, "R3");
  check_matrix(r4, l2, "R4");
  check_matrix(t1, l1 * l1 * gains.ris1_ue, "T1");
  check_matrix(t2, l2 * l2 * gains.ris2_ue, "T2");
  check_matrix(ts, l2 * l2 * gains.ris2_ris1, "Ts");
  check_matrix(t3, m * gains.bs_ris1, "T3");
  check_matrix(t4, m * gains.bs_ris2, "T4");
}

CorrelationProfile build_profile(const NodeGeometry& geometry,
                                 const SystemDims& dims,
                                 const CorrelationParams& params) {
  geometry.validate(dims);
  CorrelationProfile p;
  p.dims = dims;
  const auto gain = [&](const Vec3& a, const Vec3& b) {
    return path_loss_linear(distance(a, b), params.tx_gain_dbi,
                            params.rx_gain_dbi);
  };
  p.gains.ris1_ue = gain(geometry.ris1, geometry.user);
  p.gains.ris2_ue = gain(geometry.ris2, geometry.user);
  p.gains.ris2_ris1 = gain(geometry.ris2, geometry.ris1);
  p.gains.bs_ris1 = gain(geometry.bs, geometry.ris1);
  p.gains.bs_ris2 = gain(geometry.bs, geometry.ris2);

  const int n = dims.ue_antennas;
  const int m = dims.bs_antennas;
  const int l1 = dims.ris1_elements;
  const int l2 = dims.ris2_elements;

  CMat ue_corr, bs_corr, ris1_corr, ris2_corr;
  if (params.identity_override) {
    ue_corr = CMat::Identity(n, n);
    bs_corr = CMat::Identity(m, m);
    ris1_corr = CMat::Identity(l1, l1);
    ris2_corr = CMat::Identity(l2, l2);
  } else {
    ue_corr = integral_correlation(n, geometry.ue_antenna_spacing_wl,
                                   params.mean_angle_deg,
                                   params.angular_spread_deg);
    bs_corr = integral_correlation(m, geometry.bs_antenna_spacing_wl,
                                   params.mean_angle_deg,
                                   params.angular_spread_deg);
    ris1_corr = sinc_correlation(geometry.ris1_grid.element_positions(),
                                 geometry.wavelength_m);
    ris2_corr = sinc_correlation(geometry.ris2_grid.element_positions(),
                                 geometry.wavelength_m);
  }

  p.r1 = rescale_trace(ue_corr, n, "R1");
  p.r2 = rescale_trace(ue_corr, n, "R2");
  p.rs = rescale_trace(ris1_corr, l1, "Rs");
  p.r3 = rescale_trace(ris1_corr, l1, "R3");
  p.r4 = rescale_trace(ris2_corr, l2, "R4");
  p.t1 = rescale_trace(ris1_corr, double(l1) * l1 * p.gains.ris1_ue, "T1");
  p.t2 = rescale_trace(ris2_corr, double(l2) * l2 * p.gains.ris2_ue, "T2");
  p.ts = rescale_trace(ris2_corr, double(l2) * l2 * p.gains.ris2_ris1, "Ts");
  p.t3 = rescale_trace(bs_corr, double(m) * p.gains.bs_ris1, "T3");
  p.t4 = rescale_trace(bs_corr, double(m) * p.gains.bs_ris2, "T4");
  return p;
}

}  // namespace riscade
