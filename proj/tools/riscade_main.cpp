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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <numbers>

#include "riscade/errors.hpp"
#include "riscade/runner.hpp"

namespace {

using namespace riscade;

constexpr double kLn2 = std::numbers::ln2;

struct CommonArgs {
  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
  std::optional<double> snr_db;
  bool paper_scale = false;
  std::string output;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool desk_preset) {
  cmd->add_option("--scenario", args.scenario_path,
                  "scenario file (defaults apply when omitted)");
  cmd->add_option("--seed", args.seed, "override the scenario seed");
  cmd->add_option("--trials", args.trials, "override the Monte-Carlo trials");
  cmd->add_option("--threads", args.threads, "worker threads");
  cmd->add_option("--snr", args.snr_db, "override the scenario SNR (dB)");
  cmd->add_option("-o,--out", args.output, "output file (default: stdout)");
  if (desk_preset)
    cmd->add_flag("--paper-scale", args.paper_scale,
                  "keep the full 100-element surfaces instead of the "
                  "16-element desk preset");
}

Scenario load_scenario(const CommonArgs& args, bool desk_preset) {
  Scenario s = args.scenario_path.empty() ? Scenario{}
                                          : parse_scenario(args.scenario_path);
  // MC-heavy commands drop to 16-element surfaces unless the file pinned the
  // dimensions or --paper-scale was given.
  if (desk_preset && !args.paper_scale &&
      !s.explicit_keys.count("dims.ris1_elements") &&
      !s.explicit_keys.count("dims.ris2_elements")) {
    s.dims.ris1_elements = 16;
    s.dims.ris2_elements = 16;
  }
  if (args.seed) s.seed = *args.seed;
  if (args.trials) s.trials = *args.trials;
  if (args.threads) s.threads = *args.threads;
  if (args.snr_db) s.snr_db = *args.snr_db;
  s.validate();
  return s;
}

std::ostream& open_output(const CommonArgs& args, std::ofstream& file) {
  if (args.output.empty()) return std::cout;
  file.open(args.output);
  if (!file) throw ConfigError("cannot open output file " + args.output);
  return file;
}

int cmd_echo_config(const CommonArgs& args, bool dump_profile,
                    const std::string& dump_dir) {
  const Scenario s = load_scenario(args, false);
  const ResolvedScenario rs = resolve(s);
  std::ofstream file;
  open_output(args, file) << echo_with_derived(rs);
  if (dump_profile) {
    const auto dir = dump_dir.empty() ? std::string(".") : dump_dir;
    const std::pair<const char*, const CMat*> mats[] = {
        {"r1", &rs.profile.r1}, {"r2", &rs.profile.r2},
        {"rs", &rs.profile.rs}, {"r3", &rs.profile.r3},
        {"r4", &rs.profile.r4}, {"t1", &rs.profile.t1},
        {"t2", &rs.profile.t2}, {"ts", &rs.profile.ts},
        {"t3", &rs.profile.t3}, {"t4", &rs.profile.t4}};
    for (const auto& [name, mat] : mats)
      write_matrix_file(dir + "/" + name + ".csv", *mat);
    const ChannelDraw draw = sample_channel(rs.profile, s.seed);
    const std::pair<const char*, const CMat*> draws[] = {
        {"h1", &draw.h1}, {"h2", &draw.h2}, {"h3", &draw.h3},
        {"h4", &draw.h4}, {"hs", &draw.hs}};
    for (const auto& [name, mat] : draws)
      write_matrix_file(dir + "/" + name + ".csv", *mat);
    std::cerr << "profile and a seeded draw dumped to " << dir << "\n";
  }
  return 0;
}

int cmd_validate(const CommonArgs& args, double threshold, bool corrupt_phi2,
                 const std::string& per_trial_path) {
  const Scenario s = load_scenario(args, true);
  const ResolvedScenario rs = resolve(s);
  const EquationSet equations =
      corrupt_phi2 ? EquationSet::phi2_truncated : EquationSet::standard;
  const ValidateReport report = run_validate(rs, threshold, equations);
  std::ofstream file;
  write_validate_csv(open_output(args, file), report);
  if (!per_trial_path.empty()) {
    std::ofstream per(per_trial_path);
    if (!per) throw ConfigError("cannot open " + per_trial_path);
    per << "snr_db,trial,rate_nats\n";
    const PhaseConfig phases =
        PhaseConfig::identity(s.dims.ris1_elements, s.dims.ris2_elements);
    const ChannelSampler sampler(rs.profile);
    for (double snr_db : s.snr_grid_db) {
      const CMat q = TransmitCovariance::uniform(
                         s.dims.bs_antennas, power_for_snr(rs, snr_db))
                         .q;
      std::vector<double> rates;
      McOptions mc{s.trials, s.seed, s.threads, &rates};
      ergodic_rate_mc(sampler, q, phases, rs.noise_w, mc);
      for (std::size_t t = 0; t < rates.size(); ++t)
        per << snr_db << ',' << t << ',' << rates[t] << '\n';
    }
  }
  for (const auto& p : report.points)
    std::cerr << "snr " << p.snr_db << " dB: asym " << p.asymptotic_nats / kLn2
              << " bits, mc " << p.monte_carlo_nats / kLn2 << " bits, rel err "
              << p.relative_error * 100 << "% -> "
              << (p.pass ? "pass" : "FAIL")
              << (p.error.empty() ? "" : " (" + p.error + ")") << "\n";
  return report.all_pass ? 0 : 1;
}

int cmd_sweep(const CommonArgs& args, const std::string& axis,
              std::vector<double> grid, const std::string& methods,
              const PsoSettings& pso, bool timings) {
  const Scenario s = load_scenario(args, true);
  SweepSpec spec;
  spec.pso = pso;
  if (axis == "snr")
    spec.axis = SweepAxis::snr;
  else if (axis == "elements")
    spec.axis = SweepAxis::element_count;
  else if (axis == "spacing")
    spec.axis = SweepAxis::element_spacing;
  else if (axis == "antennas")
    spec.axis = SweepAxis::antenna_count;
  else
    throw ConfigError("unknown axis '" + axis +
                      "' (use snr|elements|spacing|antennas)");
  spec.grid = std::move(grid);
  if (spec.grid.empty() && spec.axis == SweepAxis::snr)
    spec.grid = s.snr_grid_db;
  spec.with_asymptotic = methods.find("asym") != std::string::npos;
  spec.with_monte_carlo = methods.find("mc") != std::string::npos;
  spec.with_optimized = methods.find("opt") != std::string::npos;
  const auto records = run_sweep(s, spec);
  std::ofstream file;
  write_results_csv(open_output(args, file), records, timings);
  for (const auto& r : records)
    if (r.status != "ok") return 1;
  return 0;
}

int cmd_optimize(const CommonArgs& args, const PsoSettings& pso_in,
                 bool uncommon, const std::string& dump_prefix) {
  const Scenario s = load_scenario(args, true);
  const ResolvedScenario rs = resolve(s);
  PsoSettings pso = pso_in;
  pso.seed = s.seed;
  pso.threads = s.threads;
  const bool common = uncommon ? false : s.common_phase;
  const AoResult result = alternating_optimize(
      rs.profile, rs.noise_w, rs.power_w, pso, SolverSettings{}, common,
      s.seed);
  std::ofstream file;
  write_ao_trace_csv(open_output(args, file), result.trace);
  if (!dump_prefix.empty()) {
    write_matrix_file(dump_prefix + "_q.csv", result.covariance.q);
    CMat phases(result.phases.ris1.size() + result.phases.ris2.size(), 1);
    for (Eigen::Index i = 0; i < result.phases.ris1.size(); ++i)
      phases(i, 0) = result.phases.ris1[i];
    for (Eigen::Index i = 0; i < result.phases.ris2.size(); ++i)
      phases(result.phases.ris1.size() + i, 0) = result.phases.ris2[i];
    write_matrix_file(dump_prefix + "_phases.csv", phases);
  }
  std::cerr << "final rate: " << result.rate_nats << " nats ("
            << result.rate_nats / kLn2 << " bits) after "
            << result.trace.back().iteration << " outer iterations\n";
  return 0;
}

int cmd_benchmark(const CommonArgs& args, bool optimize_each,
                  const PsoSettings& pso_in) {
  const Scenario s = load_scenario(args, true);
  const ResolvedScenario rs = resolve(s);
  PsoSettings pso = pso_in;
  pso.seed = s.seed;
  pso.threads = s.threads;
  const auto rows = run_benchmarks(rs, optimize_each, pso);
  std::ofstream file;
  write_benchmark_csv(open_output(args, file), rows);
  for (const auto& r : rows)
    std::cerr << deployment_name(r.deployment) << ": "
              << r.rate_nats / kLn2 << " bits"
              << (r.optimized_nats
                      ? " -> optimized " +
                            std::to_string(*r.optimized_nats / kLn2) + " bits"
                      : "")
              << "\n";
  return 0;
}

void add_pso_options(CLI::App* cmd, PsoSettings& pso) {
  cmd->add_option("--swarm", pso.swarm_size, "PSO swarm size");
  cmd->add_option("--pso-iters", pso.iterations, "PSO iterations");
  cmd->add_option("--pso-restarts", pso.restarts, "independent PSO restarts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "riscade: asymptotic ergodic-rate analysis and statistical-CSI design "
      "for a cooperative double-RIS MIMO link"};
  app.require_subcommand(1);

  CommonArgs echo_args;
  bool dump_profile = false;
  std::string dump_dir;
  auto* echo = app.add_subcommand(
      "echo-config", "parse the scenario and print its normalized form");
  add_common(echo, echo_args, false);
  echo->add_flag("--dump-profile", dump_profile,
                 "also write the correlation matrices and one channel draw");
  echo->add_option("--dump-dir", dump_dir, "directory for --dump-profile");

  CommonArgs validate_args;
  double threshold = 0.03;
  bool corrupt_phi2 = false;
  std::string per_trial_path;
  auto* validate = app.add_subcommand(
      "validate",
      "compare the closed-form rate against Monte-Carlo on the SNR grid");
  add_common(validate, validate_args, true);
  validate->add_option("--threshold", threshold,
                       "relative-error pass threshold");
  validate->add_flag("--truncated-phi2", corrupt_phi2,
                     "sensitivity hook: solve with the deliberately truncated "
                     "inter-surface equation");
  validate->add_option("--per-trial-csv", per_trial_path,
                       "dump per-trial Monte-Carlo rates to this file");

  CommonArgs sweep_args;
  std::string axis = "snr";
  std::vector<double> grid;
  std::string methods = "asym,mc";
  bool timings = false;
  PsoSettings sweep_pso;
  sweep_pso.swarm_size = 16;
  sweep_pso.iterations = 30;
  auto* sweep = app.add_subcommand("sweep", "evaluate rates along one axis");
  add_common(sweep, sweep_args, true);
  sweep->add_option("--axis", axis, "snr|elements|spacing|antennas");
  sweep->add_option("--grid", grid, "grid values (strictly increasing)");
  sweep->add_option("--methods", methods,
                    "comma set from {asym,mc,opt} (default asym,mc)");
  sweep->add_flag("--timings", timings, "append a wall_ms column");
  add_pso_options(sweep, sweep_pso);

  CommonArgs optimize_args;
  bool uncommon = false;
  std::string dump_prefix;
  PsoSettings opt_pso;
  auto* optimize = app.add_subcommand(
      "optimize", "run the alternating covariance/phase design");
  add_common(optimize, optimize_args, true);
  optimize->add_flag("--uncommon", uncommon,
                     "search per-surface phases instead of a common vector");
  optimize->add_option("--dump", dump_prefix,
                       "write <prefix>_q.csv and <prefix>_phases.csv");
  add_pso_options(optimize, opt_pso);

  CommonArgs bench_args;
  bool optimize_each = false;
  PsoSettings bench_pso;
  bench_pso.swarm_size = 16;
  bench_pso.iterations = 30;
  auto* benchmark = app.add_subcommand(
      "benchmark", "compare the five deployment variants");
  add_common(benchmark, bench_args, true);
  benchmark->add_flag("--optimize-each", optimize_each,
                      "also run the alternating design per deployment");
  add_pso_options(benchmark, bench_pso);

  CLI11_PARSE(app, argc, argv);

  try {
    if (echo->parsed()) return cmd_echo_config(echo_args, dump_profile, dump_dir);
    if (validate->parsed())
      return cmd_validate(validate_args, threshold, corrupt_phi2,
                          per_trial_path);
    if (sweep->parsed())
      return cmd_sweep(sweep_args, axis, grid, methods, sweep_pso, timings);
    if (optimize->parsed())
      return cmd_optimize(optimize_args, opt_pso, uncommon, dump_prefix);
    if (benchmark->parsed())
      return cmd_benchmark(bench_args, optimize_each, bench_pso);
  } catch (const riscade::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
