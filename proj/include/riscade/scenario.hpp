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
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "riscade/correlation.hpp"
#include "riscade/geometry.hpp"

namespace riscade {

/// How the scenario's SNR value maps onto a transmit power.
///
/// `transmit`: SNR = P / s2 (plain power over noise).
/// `path`:     SNR = P * g / s2 with g the mean per-entry gain of the
///             stronger single-reflection branch, so the dB axis lands in
///             the operating range of the deployed link budget.
enum class SnrReference { transmit, path };

/// Complete experiment description with every default resolved.
///
/// An empty file parses to this struct's defaults: the reference deployment
/// (BS (1,0,5), user (1,50,1.5), surfaces at (0,50,3) and (0,0,3), 8x4
/// antennas, 100 elements per surface, -94 dBm noise, 5 dBi gains,
/// half-wavelength arrays, Gaussian cluster spread 5 degrees).
struct Scenario {
  SystemDims dims{8, 4, 100, 100};

  Vec3 bs{1.0, 0.0, 5.0};
  Vec3 user{1.0, 50.0, 1.5};
  Vec3 ris1{0.0, 50.0, 3.0};
  Vec3 ris2{0.0, 0.0, 3.0};
  double wavelength_m = 0.1;
  double element_spacing_wl = 0.5;
  double bs_antenna_spacing_wl = 0.5;
  double ue_antenna_spacing_wl = 0.5;

  double mean_angle_deg = 0.0;
  double angular_spread_deg = 5.0;
  bool identity_correlations = false;
  double tx_gain_dbi = 5.0;
  double rx_gain_dbi = 5.0;

  double noise_dbm = -94.0;
  double snr_db = 10.0;
  SnrReference snr_reference = SnrReference::path;
  std::optional<double> power_dbm;  // overrides the SNR mapping when set

  bool common_phase = true;
  int trials = 1000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::vector<double> snr_grid_db{-10, -5, 0, 5, 10, 15, 20};

  /// Keys the user set explicitly (section.key), for preset logic.
  std::set<std::string> explicit_keys;

  void validate() const;
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Strict section/key parser; unknown keys, bad values, and duplicate keys
/// are ConfigErrors carrying the line number.
Scenario parse_scenario_text(std::istream& in);
Scenario parse_scenario(const std::string& path);

/// Canonical round-trippable echo: parse(echo(s)) reproduces s exactly.
/// Derived quantities (distances, link gains, resolved power) are appended
/// as comments the parser ignores.
std::string echo_scenario(const Scenario& s);

/// FNV-1a over the canonical key/value lines (comments excluded).
std::uint64_t scenario_hash(const Scenario& s);

/// Scenario with its profile built and powers resolved to linear watts.
struct ResolvedScenario {
  Scenario scenario;
  NodeGeometry geometry;
  CorrelationProfile profile;
  double noise_w = 0.0;
  double power_w = 0.0;
  double reference_gain = 1.0;  // branch gain used by SnrReference::path
};

ResolvedScenario resolve(const Scenario& s);

/// Power for an SNR point under the scenario's reference convention.
double power_for_snr(const ResolvedScenario& rs, double snr_db);

/// Canonical echo plus the derived quantities (distances, link gains,
/// resolved power) appended as comment lines.
std::string echo_with_derived(const ResolvedScenario& rs);

}  // namespace riscade
