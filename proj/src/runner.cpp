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

#include "riscade/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "riscade/errors.hpp"

namespace riscade {
namespace {

constexpr double kLn2 = std::numbers::ln2;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string hash_string(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string sanitize(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

ValidateReport run_validate(const ResolvedScenario& rs, double threshold,
                            EquationSet equations) {
  const Scenario& s = rs.scenario;
  ValidateReport report;
  report.threshold = threshold;
  report.all_pass = true;

  const PhaseConfig phases =
      PhaseConfig::identity(s.dims.ris1_elements, s.dims.ris2_elements);
  const ChannelSampler sampler(rs.profile);
  SolverSettings solver;
  solver.equations = equations;

  for (double snr_db : s.snr_grid_db) {
    ValidatePoint point;
    point.snr_db = snr_db;
    try {
      const double power = power_for_snr(rs, snr_db);
      const CMat q = TransmitCovariance::uniform(s.dims.bs_antennas, power).q;
      point.asymptotic_nats =
          asymptotic_rate(rs.profile, q, phases, rs.noise_w, solver);
      McOptions mc;
      mc.trials = s.trials;
      mc.seed = s.seed;  // same seed at every point: common random numbers
      mc.threads = s.threads;
      const McEstimate est =
          ergodic_rate_mc(sampler, q, phases, rs.noise_w, mc);
      point.monte_carlo_nats = est.mean_nats;
      point.mc_std_error = est.std_error;
      point.relative_error =
          est.mean_nats == 0.0
              ? std::abs(point.asymptotic_nats)
              : std::abs(point.asymptotic_nats - est.mean_nats) /
                    std::abs(est.mean_nats);
      point.pass = point.relative_error <= threshold;
    } catch (const Error& e) {
      point.error = e.what();
      point.pass = false;
    }
    report.all_pass = report.all_pass && point.pass;
    report.points.push_back(std::move(point));
  }
  return report;
}

void write_validate_csv(std::ostream& out, const ValidateReport& report) {
  out << "snr_db,asymptotic_nats,monte_carlo_nats,mc_std_error,"
         "relative_error,pass,error\n";
  for (const auto& p : report.points) {
    out << fmt(p.snr_db) << ',' << fmt(p.asymptotic_nats) << ','
        << fmt(p.monte_carlo_nats) << ',' << fmt(p.mc_std_error) << ','
        << fmt(p.relative_error) << ',' << (p.pass ? "1" : "0") << ','
        << sanitize(p.error) << '\n';
  }
}

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::snr: return "snr_db";
    case SweepAxis::element_count: return "elements";
    case SweepAxis::element_spacing: return "spacing_wl";
    case SweepAxis::antenna_count: return "bs_antennas";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (grid.empty()) throw ConfigError("sweep grid must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1])
      throw ConfigError("sweep grid must be strictly increasing");
  if (!with_asymptotic && !with_monte_carlo && !with_optimized)
    throw ConfigError("sweep requests no methods");
  if (axis == SweepAxis::element_count || axis == SweepAxis::antenna_count)
    for (double v : grid)
      if (v < 1.0 || v != std::floor(v))
        throw ConfigError("count axes need positive integer grid values");
}

namespace {

Scenario scenario_at(const Scenario& base, SweepAxis axis, double value) {
  Scenario s = base;
  switch (axis) {
    case SweepAxis::snr:
      s.snr_db = value;
      break;
    case SweepAxis::element_count:
      s.dims.ris1_elements = static_cast<int>(value);
      s.dims.ris2_elements = static_cast<int>(value);
      break;
    case SweepAxis::element_spacing:
      s.element_spacing_wl = value;
      break;
    case SweepAxis::antenna_count: {
      const double ratio = static_cast<double>(base.dims.ue_antennas) /
                           base.dims.bs_antennas;
      s.dims.bs_antennas = static_cast<int>(value);
      s.dims.ue_antennas = std::max(
          1, static_cast<int>(std::lround(value * ratio)));
      break;
    }
  }
  return s;
}

}  // namespace

std::vector<ResultRecord> run_sweep(const Scenario& scenario,
                                    const SweepSpec& spec) {
  spec.validate();
  scenario.validate();
  const std::string hash = hash_string(scenario_hash(scenario));
  // Fixed power on non-SNR axes, resolved from the base scenario.
  const ResolvedScenario base = resolve(scenario);

  std::vector<ResultRecord> records;
  for (double value : spec.grid) {
    const auto start = std::chrono::steady_clock::now();
    auto push = [&](const std::string& method, double nats, double se,
                    int trials, const std::string& status) {
      ResultRecord r;
      r.scenario_hash = hash;
      r.axis = axis_name(spec.axis);
      r.axis_value = value;
      r.method = method;
      r.rate_nats = nats;
      r.rate_bits = nats / kLn2;
      r.std_error_nats = se;
      r.trials = trials;
      r.status = status;
      r.wall_ms = elapsed_ms(start);
      records.push_back(std::move(r));
    };

    Scenario point_scenario = scenario_at(scenario, spec.axis, value);
    ResolvedScenario rs;
    try {
      rs = resolve(point_scenario);
    } catch (const Error& e) {
      const std::string status = sanitize(std::string("error: ") + e.what());
      if (spec.with_asymptotic) push("asymptotic", 0, 0, 0, status);
      if (spec.with_monte_carlo) push("monte_carlo", 0, 0, 0, status);
      if (spec.with_optimized) push("optimized", 0, 0, 0, status);
      continue;
    }
    const double power = spec.axis == SweepAxis::snr
                             ? power_for_snr(rs, value)
                             : base.power_w;
    const SystemDims& dims = point_scenario.dims;
    const PhaseConfig phases =
        PhaseConfig::identity(dims.ris1_elements, dims.ris2_elements);
    const CMat q = TransmitCovariance::uniform(dims.bs_antennas, power).q;

    if (spec.with_asymptotic) {
      try {
        const double nats = asymptotic_rate(rs.profile, q, phases, rs.noise_w);
        push("asymptotic", nats, 0, 0, "ok");
      } catch (const Error& e) {
        push("asymptotic", 0, 0, 0, sanitize(std::string("error: ") + e.what()));
      }
    }
    if (spec.with_monte_carlo) {
      try {
        McOptions mc;
        mc.trials = point_scenario.trials;
        mc.seed = point_scenario.seed;
        mc.threads = point_scenario.threads;
        const McEstimate est =
            ergodic_rate_mc(rs.profile, q, phases, rs.noise_w, mc);
        push("monte_carlo", est.mean_nats, est.std_error, est.trials, "ok");
      } catch (const Error& e) {
        push("monte_carlo", 0, 0, 0,
             sanitize(std::string("error: ") + e.what()));
      }
    }
    if (spec.with_optimized) {
      try {
        const AoResult ao = alternating_optimize(
            rs.profile, rs.noise_w, power, spec.pso, SolverSettings{},
            point_scenario.common_phase, point_scenario.seed);
        push("optimized", ao.rate_nats, 0, 0, "ok");
      } catch (const Error& e) {
        push("optimized", 0, 0, 0, sanitize(std::string("error: ") + e.what()));
      }
    }
  }
  return records;
}

void write_results_csv(std::ostream& out,
                       const std::vector<ResultRecord>& records,
                       bool include_timings) {
  out << "scenario,axis,value,method,rate_nats,rate_bits,std_err_nats,trials,"
         "status";
  if (include_timings) out << ",wall_ms";
  out << '\n';
  for (const auto& r : records) {
    out << r.scenario_hash << ',' << r.axis << ',' << fmt(r.axis_value) << ','
        << r.method << ',' << fmt(r.rate_nats) << ',' << fmt(r.rate_bits)
        << ',' << fmt(r.std_error_nats) << ',' << r.trials << ',' << r.status;
    if (include_timings) out << ',' << fmt(r.wall_ms);
    out << '\n';
  }
}

const char* deployment_name(Deployment d) {
  switch (d) {
    case Deployment::full: return "full";
    case Deployment::single_reflection: return "single_reflection";
    case Deployment::ris1_only: return "ris1_only";
    case Deployment::ris2_only: return "ris2_only";
    case Deployment::double_reflection: return "double_reflection";
  }
  return "?";
}

CorrelationProfile deployment_profile(const CorrelationProfile& profile,
                                      Deployment d) {
  CorrelationProfile p = profile;
  auto kill = [](CMat& m) { m.setZero(); };
  switch (d) {
    case Deployment::full:
      break;
    case Deployment::single_reflection:
      kill(p.ts);
      kill(p.rs);
      p.gains.ris2_ris1 = 0.0;
      break;
    case Deployment::ris1_only:
      kill(p.t2);
      kill(p.t4);
      kill(p.ts);
      p.gains.ris2_ue = p.gains.bs_ris2 = p.gains.ris2_ris1 = 0.0;
      break;
    case Deployment::ris2_only:
      kill(p.t1);
      kill(p.t3);
      kill(p.ts);
      p.gains.ris1_ue = p.gains.bs_ris1 = p.gains.ris2_ris1 = 0.0;
      break;
    case Deployment::double_reflection:
      kill(p.t2);
      kill(p.t3);
      p.gains.ris2_ue = p.gains.bs_ris1 = 0.0;
      break;
  }
  return p;
}

std::vector<BenchmarkRow> run_benchmarks(const ResolvedScenario& rs,
                                         bool optimize_each,
                                         const PsoSettings& pso) {
  const SystemDims& dims = rs.scenario.dims;
  const PhaseConfig phases =
      PhaseConfig::identity(dims.ris1_elements, dims.ris2_elements);
  const CMat q =
      TransmitCovariance::uniform(dims.bs_antennas, rs.power_w).q;
  std::vector<BenchmarkRow> rows;
  for (Deployment d :
       {Deployment::full, Deployment::single_reflection, Deployment::ris1_only,
        Deployment::ris2_only, Deployment::double_reflection}) {
    const CorrelationProfile profile = deployment_profile(rs.profile, d);
    BenchmarkRow row;
    row.deployment = d;
    row.rate_nats = asymptotic_rate(profile, q, phases, rs.noise_w);
    if (optimize_each) {
      const AoResult ao = alternating_optimize(
          profile, rs.noise_w, rs.power_w, pso, SolverSettings{},
          rs.scenario.common_phase, rs.scenario.seed);
      row.optimized_nats = ao.rate_nats;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_benchmark_csv(std::ostream& out,
                         const std::vector<BenchmarkRow>& rows) {
  out << "deployment,rate_nats,rate_bits,optimized_nats,optimized_bits\n";
  for (const auto& r : rows) {
    out << deployment_name(r.deployment) << ',' << fmt(r.rate_nats) << ','
        << fmt(r.rate_nats / kLn2) << ',';
    if (r.optimized_nats)
      out << fmt(*r.optimized_nats) << ',' << fmt(*r.optimized_nats / kLn2);
    else
      out << ',';
    out << '\n';
  }
}

void write_ao_trace_csv(std::ostream& out, const AoTrace& trace) {
  out << "iteration,rate_nats,rate_bits,q_hash,phase_hash,wall_ms\n";
  for (const auto& e : trace) {
    out << e.iteration << ',' << fmt(e.rate_nats) << ','
        << fmt(e.rate_nats / kLn2) << ',' << hash_string(e.q_hash) << ','
        << hash_string(e.phase_hash) << ',' << fmt(e.wall_ms) << '\n';
  }
}

void write_solver_trace_csv(std::ostream& out,
                            const std::vector<IterationRecord>& records) {
  out << "iteration";
  for (const char* name : AuxiliaryState::names()) out << ',' << name;
  out << ",residual_norm\n";
  for (const auto& r : records) {
    out << r.iteration;
    for (double v : r.state) out << ',' << fmt(v);
    out << ',' << fmt(r.residual_norm) << '\n';
  }
}

}  // namespace riscade
