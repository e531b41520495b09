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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "riscade/monte_carlo.hpp"
#include "riscade/optimizer.hpp"
#include "riscade/scenario.hpp"

namespace riscade {

// --- validation --------------------------------------------------------

struct ValidatePoint {
  double snr_db = 0.0;
  double asymptotic_nats = 0.0;
  double monte_carlo_nats = 0.0;
  double mc_std_error = 0.0;
  double relative_error = 0.0;
  bool pass = false;
  std::string error;  // nonempty when the point failed to evaluate
};

struct ValidateReport {
  std::vector<ValidatePoint> points;
  double threshold = 0.0;
  bool all_pass = false;
};

/// Compares the closed-form rate against the Monte-Carlo oracle on the
/// scenario's SNR grid with common random numbers across points.
/// Uniform covariance (P/M) I and identity phases throughout.
ValidateReport run_validate(const ResolvedScenario& rs, double threshold = 0.03,
                            EquationSet equations = EquationSet::standard);

void write_validate_csv(std::ostream& out, const ValidateReport& report);

// --- sweeps -------------------------------------------------------------

enum class SweepAxis { snr, element_count, element_spacing, antenna_count };

const char* axis_name(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::snr;
  std::vector<double> grid;
  bool with_asymptotic = true;
  bool with_monte_carlo = false;
  bool with_optimized = false;
  PsoSettings pso;  // used by the optimized method

  void validate() const;
};

struct ResultRecord {
  std::string scenario_hash;
  std::string axis;
  double axis_value = 0.0;
  std::string method;
  double rate_nats = 0.0;
  double rate_bits = 0.0;
  double std_error_nats = 0.0;
  int trials = 0;
  std::string status = "ok";
  double wall_ms = 0.0;
};

/// One record per (grid point, method); per-point failures are recorded in
/// the status column and the sweep continues. Power is resolved once from
/// the base scenario and held fixed on non-SNR axes.
std::vector<ResultRecord> run_sweep(const Scenario& scenario,
                                    const SweepSpec& spec);

/// Fixed column schema; wall_ms appears only when include_timings is set so
/// the default output is byte-deterministic.
void write_results_csv(std::ostream& out,
                       const std::vector<ResultRecord>& records,
                       bool include_timings = false);

// --- deployment benchmarks ----------------------------------------------

enum class Deployment {
  full,
  single_reflection,
  ris1_only,
  ris2_only,
  double_reflection
};

const char* deployment_name(Deployment d);

/// Copy of the profile with the statistics of the unused links zeroed.
CorrelationProfile deployment_profile(const CorrelationProfile& profile,
                                      Deployment d);

struct BenchmarkRow {
  Deployment deployment;
  double rate_nats = 0.0;
  std::optional<double> optimized_nats;
};

/// The five deployments evaluated at uniform covariance and identity phases,
/// optionally followed by the alternating design on each.
std::vector<BenchmarkRow> run_benchmarks(const ResolvedScenario& rs,
                                         bool optimize_each = false,
                                         const PsoSettings& pso = {});

void write_benchmark_csv(std::ostream& out,
                         const std::vector<BenchmarkRow>& rows);

// --- optimizer traces ----------------------------------------------------

void write_ao_trace_csv(std::ostream& out, const AoTrace& trace);
void write_solver_trace_csv(std::ostream& out,
                            const std::vector<IterationRecord>& records);

}  // namespace riscade
