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

#include "riscade/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "riscade/errors.hpp"
#include "riscade/linalg.hpp"

namespace riscade {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": bad number '" + v +
                      "'");
  }
}

long parse_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": bad integer '" + v +
                      "'");
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": bad boolean '" + v +
                    "' (use true/false)");
}

Vec3 parse_vec3(const std::string& v, int line) {
  std::istringstream ss(v);
  std::string tok;
  double parts[3];
  for (int i = 0; i < 3; ++i) {
    if (!std::getline(ss, tok, ','))
      throw ConfigError("line " + std::to_string(line) +
                        ": expected x,y,z coordinates, got '" + v + "'");
    parts[i] = parse_double(trim(tok), line);
  }
  if (std::getline(ss, tok, ','))
    throw ConfigError("line " + std::to_string(line) +
                      ": too many coordinates in '" + v + "'");
  return {parts[0], parts[1], parts[2]};
}

std::vector<double> parse_list(const std::string& v, int line) {
  std::vector<double> out;
  std::istringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_double(trim(tok), line));
  if (out.empty())
    throw ConfigError("line " + std::to_string(line) + ": empty list");
  return out;
}

std::string vec3_str(const Vec3& v) {
  return format_double(v.x) + "," + format_double(v.y) + "," +
         format_double(v.z);
}

std::string list_str(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out;
}

using Setter = std::function<void(Scenario&, const std::string&, int)>;

const std::map<std::string, Setter>& key_table() {
  static const std::map<std::string, Setter> table = {
      {"dims.bs_antennas",
       [](Scenario& s, const std::string& v, int l) {
         s.dims.bs_antennas = static_cast<int>(parse_int(v, l));
       }},
      {"dims.ue_antennas",
       [](Scenario& s, const std::string& v, int l) {
         s.dims.ue_antennas = static_cast<int>(parse_int(v, l));
       }},
      {"dims.ris1_elements",
       [](Scenario& s, const std::string& v, int l) {
         s.dims.ris1_elements = static_cast<int>(parse_int(v, l));
       }},
      {"dims.ris2_elements",
       [](Scenario& s, const std::string& v, int l) {
         s.dims.ris2_elements = static_cast<int>(parse_int(v, l));
       }},
      {"geometry.bs",
       [](Scenario& s, const std::string& v, int l) { s.bs = parse_vec3(v, l); }},
      {"geometry.user",
       [](Scenario& s, const std::string& v, int l) { s.user = parse_vec3(v, l); }},
      {"geometry.ris1",
       [](Scenario& s, const std::string& v, int l) { s.ris1 = parse_vec3(v, l); }},
      {"geometry.ris2",
       [](Scenario& s, const std::string& v, int l) { s.ris2 = parse_vec3(v, l); }},
      {"geometry.wavelength_m",
       [](Scenario& s, const std::string& v, int l) {
         s.wavelength_m = parse_double(v, l);
       }},
      {"geometry.element_spacing_wl",
       [](Scenario& s, const std::string& v, int l) {
         s.element_spacing_wl = parse_double(v, l);
       }},
      {"geometry.bs_antenna_spacing_wl",
       [](Scenario& s, const std::string& v, int l) {
         s.bs_antenna_spacing_wl = parse_double(v, l);
       }},
      {"geometry.ue_antenna_spacing_wl",
       [](Scenario& s, const std::string& v, int l) {
         s.ue_antenna_spacing_wl = parse_double(v, l);
       }},
      {"correlation.mean_angle_deg",
       [](Scenario& s, const std::string& v, int l) {
         s.mean_angle_deg = parse_double(v, l);
       }},
      {"correlation.angular_spread_deg",
       [](Scenario& s, const std::string& v, int l) {
         s.angular_spread_deg = parse_double(v, l);
       }},
      {"correlation.identity_correlations",
       [](Scenario& s, const std::string& v, int l) {
         s.identity_correlations = parse_bool(v, l);
       }},
      {"correlation.tx_gain_dbi",
       [](Scenario& s, const std::string& v, int l) {
         s.tx_gain_dbi = parse_double(v, l);
       }},
      {"correlation.rx_gain_dbi",
       [](Scenario& s, const std::string& v, int l) {
         s.rx_gain_dbi = parse_double(v, l);
       }},
      {"power.noise_dbm",
       [](Scenario& s, const std::string& v, int l) {
         s.noise_dbm = parse_double(v, l);
       }},
      {"power.snr_db",
       [](Scenario& s, const std::string& v, int l) {
         s.snr_db = parse_double(v, l);
       }},
      {"power.snr_reference",
       [](Scenario& s, const std::string& v, int l) {
         if (v == "transmit")
           s.snr_reference = SnrReference::transmit;
         else if (v == "path")
           s.snr_reference = SnrReference::path;
         else
           throw ConfigError("line " + std::to_string(l) +
                             ": snr_reference must be 'transmit' or 'path'");
       }},
      {"power.power_dbm",
       [](Scenario& s, const std::string& v, int l) {
         s.power_dbm = parse_double(v, l);
       }},
      {"run.common_phase",
       [](Scenario& s, const std::string& v, int l) {
         s.common_phase = parse_bool(v, l);
       }},
      {"run.trials",
       [](Scenario& s, const std::string& v, int l) {
         s.trials = static_cast<int>(parse_int(v, l));
       }},
      {"run.seed",
       [](Scenario& s, const std::string& v, int l) {
         s.seed = static_cast<std::uint64_t>(parse_int(v, l));
       }},
      {"run.threads",
       [](Scenario& s, const std::string& v, int l) {
         s.threads = static_cast<int>(parse_int(v, l));
       }},
      {"run.snr_grid_db",
       [](Scenario& s, const std::string& v, int l) {
         s.snr_grid_db = parse_list(v, l);
       }},
  };
  return table;
}

}  // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) {
  if (watt <= 0.0) throw DomainError("cannot express nonpositive power in dBm");
  return 10.0 * std::log10(watt) + 30.0;
}

void Scenario::validate() const {
  dims.validate();
  if (wavelength_m <= 0.0) throw ConfigError("wavelength_m must be positive");
  if (element_spacing_wl <= 0.0)
    throw ConfigError("element_spacing_wl must be positive");
  if (bs_antenna_spacing_wl <= 0.0 || ue_antenna_spacing_wl <= 0.0)
    throw ConfigError("antenna spacing must be positive");
  if (angular_spread_deg <= 0.0)
    throw ConfigError("angular_spread_deg must be positive");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (common_phase && dims.ris1_elements != dims.ris2_elements)
    throw ConfigError("common_phase requires equal element counts");
  if (snr_grid_db.empty()) throw ConfigError("snr_grid_db must be nonempty");
  for (std::size_t i = 1; i < snr_grid_db.size(); ++i)
    if (snr_grid_db[i] <= snr_grid_db[i - 1])
      throw ConfigError("snr_grid_db must be strictly increasing");
}

Scenario parse_scenario_text(std::istream& in) {
  Scenario s;
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": key '" + key + "' outside any [section]");
    const std::string full = section + "." + key;
    const auto& table = key_table();
    const auto it = table.find(full);
    if (it == table.end())
      throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" +
                        full + "'");
    if (!s.explicit_keys.insert(full).second)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" +
                        full + "'");
    it->second(s, value, lineno);
  }
  s.validate();
  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path);
  return parse_scenario_text(in);
}

std::string echo_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "[dims]\n";
  out << "bs_antennas = " << s.dims.bs_antennas << "\n";
  out << "ue_antennas = " << s.dims.ue_antennas << "\n";
  out << "ris1_elements = " << s.dims.ris1_elements << "\n";
  out << "ris2_elements = " << s.dims.ris2_elements << "\n";
  out << "[geometry]\n";
  out << "bs = " << vec3_str(s.bs) << "\n";
  out << "user = " << vec3_str(s.user) << "\n";
  out << "ris1 = " << vec3_str(s.ris1) << "\n";
  out << "ris2 = " << vec3_str(s.ris2) << "\n";
  out << "wavelength_m = " << format_double(s.wavelength_m) << "\n";
  out << "element_spacing_wl = " << format_double(s.element_spacing_wl) << "\n";
  out << "bs_antenna_spacing_wl = " << format_double(s.bs_antenna_spacing_wl)
      << "\n";
  out << "ue_antenna_spacing_wl = " << format_double(s.ue_antenna_spacing_wl)
      << "\n";
  out << "[correlation]\n";
  out << "mean_angle_deg = " << format_double(s.mean_angle_deg) << "\n";
  out << "angular_spread_deg = " << format_double(s.angular_spread_deg) << "\n";
  out << "identity_correlations = "
      << (s.identity_correlations ? "true" : "false") << "\n";
  out << "tx_gain_dbi = " << format_double(s.tx_gain_dbi) << "\n";
  out << "rx_gain_dbi = " << format_double(s.rx_gain_dbi) << "\n";
  out << "[power]\n";
  out << "noise_dbm = " << format_double(s.noise_dbm) << "\n";
  out << "snr_db = " << format_double(s.snr_db) << "\n";
  out << "snr_reference = "
      << (s.snr_reference == SnrReference::path ? "path" : "transmit") << "\n";
  if (s.power_dbm) out << "power_dbm = " << format_double(*s.power_dbm) << "\n";
  out << "[run]\n";
  out << "common_phase = " << (s.common_phase ? "true" : "false") << "\n";
  out << "trials = " << s.trials << "\n";
  out << "seed = " << s.seed << "\n";
  out << "threads = " << s.threads << "\n";
  out << "snr_grid_db = " << list_str(s.snr_grid_db) << "\n";
  return out.str();
}

std::uint64_t scenario_hash(const Scenario& s) {
  const std::string text = echo_scenario(s);
  return fnv1a(text.data(), text.size());
}

ResolvedScenario resolve(const Scenario& s) {
  s.validate();
  ResolvedScenario rs;
  rs.scenario = s;
  rs.geometry.bs = s.bs;
  rs.geometry.user = s.user;
  rs.geometry.ris1 = s.ris1;
  rs.geometry.ris2 = s.ris2;
  rs.geometry.wavelength_m = s.wavelength_m;
  rs.geometry.bs_antenna_spacing_wl = s.bs_antenna_spacing_wl;
  rs.geometry.ue_antenna_spacing_wl = s.ue_antenna_spacing_wl;
  rs.geometry.ris1_grid = near_square_grid(
      s.dims.ris1_elements, s.element_spacing_wl * s.wavelength_m);
  rs.geometry.ris2_grid = near_square_grid(
      s.dims.ris2_elements, s.element_spacing_wl * s.wavelength_m);

  CorrelationParams params;
  params.mean_angle_deg = s.mean_angle_deg;
  params.angular_spread_deg = s.angular_spread_deg;
  params.identity_override = s.identity_correlations;
  params.tx_gain_dbi = s.tx_gain_dbi;
  params.rx_gain_dbi = s.rx_gain_dbi;
  rs.profile = build_profile(rs.geometry, s.dims, params);

  rs.noise_w = dbm_to_watt(s.noise_dbm);
  rs.reference_gain = std::max(rs.profile.branch_gain_via_ris1(),
                               rs.profile.branch_gain_via_ris2());
  if (rs.reference_gain <= 0.0) rs.reference_gain = 1.0;  // dead deployment
  if (s.power_dbm)
    rs.power_w = dbm_to_watt(*s.power_dbm);
  else
    rs.power_w = power_for_snr(rs, s.snr_db);
  return rs;
}

double power_for_snr(const ResolvedScenario& rs, double snr_db) {
  const double snr = std::pow(10.0, snr_db / 10.0);
  if (rs.scenario.snr_reference == SnrReference::transmit)
    return snr * rs.noise_w;
  return snr * rs.noise_w / rs.reference_gain;
}

std::string echo_with_derived(const ResolvedScenario& rs) {
  const Scenario& s = rs.scenario;
  std::ostringstream out;
  out << echo_scenario(s);
  out << "# derived values (informational, ignored by the parser)\n";
  out << "# scenario_hash = " << std::hex << scenario_hash(s) << std::dec
      << "\n";
  out << "# distance_bs_ris1_m = " << format_double(distance(s.bs, s.ris1))
      << "\n";
  out << "# distance_bs_ris2_m = " << format_double(distance(s.bs, s.ris2))
      << "\n";
  out << "# distance_ris1_user_m = " << format_double(distance(s.ris1, s.user))
      << "\n";
  out << "# distance_ris2_user_m = " << format_double(distance(s.ris2, s.user))
      << "\n";
  out << "# distance_ris2_ris1_m = " << format_double(distance(s.ris2, s.ris1))
      << "\n";
  out << "# gain_ris1_user = " << format_double(rs.profile.gains.ris1_ue)
      << "\n";
  out << "# gain_ris2_user = " << format_double(rs.profile.gains.ris2_ue)
      << "\n";
  out << "# gain_ris2_ris1 = " << format_double(rs.profile.gains.ris2_ris1)
      << "\n";
  out << "# gain_bs_ris1 = " << format_double(rs.profile.gains.bs_ris1) << "\n";
  out << "# gain_bs_ris2 = " << format_double(rs.profile.gains.bs_ris2) << "\n";
  out << "# reference_branch_gain = " << format_double(rs.reference_gain)
      << "\n";
  out << "# noise_w = " << format_double(rs.noise_w) << "\n";
  out << "# power_w = " << format_double(rs.power_w) << "\n";
  out << "# power_dbm = " << format_double(watt_to_dbm(rs.power_w)) << "\n";
  out << "# transmit_snr_db = "
      << format_double(10.0 * std::log10(rs.power_w / rs.noise_w)) << "\n";
  return out.str();
}

}  // namespace riscade
