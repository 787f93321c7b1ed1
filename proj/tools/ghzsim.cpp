// Copyright 2026 The ghzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ghzsim: GHZ photon Fock-state preparation in three cavities.
//
//   ghzsim run --config F --b X [--gkl Y] [--output PREFIX]
//   ghzsim sweep --config F [--output PREFIX]
//   ghzsim validate --config F
//   ghzsim oracle-check --config F --slices K [--b X] [--cutoff N]
//
// Exit codes: 0 ok, 2 configuration or argument error, 3 numerical error,
// 4 invariant violation.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ghz/config.hpp"
#include "ghz/error.hpp"
#include "ghz/protocol.hpp"
#include "ghz/report.hpp"
#include "ghz/simd.hpp"
#include "ghz/sweep.hpp"
#include "ghz/validate.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInvariant = 4;

int exit_code(ghz::ErrorKind kind) {
  switch (kind) {
    case ghz::ErrorKind::config:
    case ghz::ErrorKind::invalid_argument:
    case ghz::ErrorKind::shape:
      return kExitConfig;
    case ghz::ErrorKind::step_size:
    case ghz::ErrorKind::singular_detuning:
    case ghz::ErrorKind::oracle_refused:
      return kExitNumeric;
    case ghz::ErrorKind::invariant:
      return kExitInvariant;
  }
  return kExitNumeric;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  ghz::require(f.good(), ghz::ErrorKind::config, "cannot write '" + path + "'");
  f << content;
  ghz::require(f.good(), ghz::ErrorKind::config, "failed writing '" + path + "'");
}

ghz::RunConfig load(const std::string& path) {
  return path.empty() ? ghz::parse_config_text("") : ghz::parse_config_file(path);
}

double pick_b(const ghz::RunConfig& cfg, std::optional<double> flag) {
  const std::optional<double> b = flag ? flag : cfg.b;
  ghz::require(b.has_value(), ghz::ErrorKind::config,
               "b = delta/g must be given with --b or [couplings] b");
  ghz::check_dispersive_ratio(*b);
  return *b;
}

struct Options {
  std::string config;
  std::string output;
  std::optional<double> b;
  std::optional<double> gkl;
  std::size_t slices = 64;
  int cutoff = 1;
  double tolerance = 1e-6;
};

int cmd_run(const Options& o) {
  ghz::RunConfig cfg = load(o.config);
  cfg.b = pick_b(cfg, o.b);
  if (o.gkl) {
    ghz::require(*o.gkl >= 0.0, ghz::ErrorKind::config, "--gkl must be non-negative");
    cfg.capacitances.reset();
    cfg.crosstalk_hz.fill(*o.gkl * cfg.g_r_hz);
  }
  const std::string echo = ghz::canonical_text(cfg);

  const ghz::ProtocolSetup setup = ghz::to_setup(cfg);
  ghz::SweepRow row;
  row.point = {*cfg.b, cfg.effective_crosstalk_hz()[0] / cfg.g_r_hz};
  const auto start = std::chrono::steady_clock::now();
  const ghz::ProtocolResult r = ghz::run_protocol(ghz::make_protocol_inputs(setup, *cfg.b));
  row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const ghz::Diagnostics& d = r.diagnostics;
  row.ok = true;
  row.status = "ok";
  row.fidelity = r.fidelity;
  row.fidelity_phase_opt = r.fidelity_phase_opt;
  row.optimal_phase = r.optimal_phase;
  row.max_f_population = d.max_f_population;
  row.t1 = d.t1;
  row.tau = d.tau;
  row.dt_step1 = d.dt_step1;
  row.dt_step2 = d.dt_step2;

  std::printf("b                      %.6g\n", d.b);
  std::printf("fidelity               %.9f\n", r.fidelity);
  std::printf("fidelity (phase opt.)  %.9f at phi = %.6f rad\n", r.fidelity_phase_opt,
              r.optimal_phase);
  std::printf("max |f> population     %.6g (bound 4/(4+b^2) = %.6g)\n", d.max_f_population,
              d.p_leak);
  std::printf("t1, t2, tau            %.6g ns, %.6g ns, %.6g ns\n", d.t1 * 1e9, d.t2 * 1e9,
              d.tau * 1e9);
  std::printf("T_cav                  %.6g us\n", d.t_cav * 1e6);
  std::printf("tau << qutrit T1,T2    %s\n", d.flags.tau_vs_qutrit ? "yes" : "no");
  std::printf("tau << T_cav           %s\n", d.flags.tau_vs_cavity ? "yes" : "no");
  std::printf("Delta_kl >> g_kl       %s\n", d.flags.crosstalk_detuned ? "yes" : "no");
  std::printf("dt (step 1, step 2)    %.6g ps, %.6g ps\n", d.dt_step1 * 1e12, d.dt_step2 * 1e12);

  const std::string path = (o.output.empty() ? std::string("ghzsim-run") : o.output) + ".json";
  write_file(path, ghz::run_envelope(row, d, echo));
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_sweep(const Options& o) {
  const ghz::RunConfig cfg = load(o.config);
  const std::string echo = ghz::canonical_text(cfg);
  ghz::SweepSpec spec;
  spec.base = ghz::to_setup(cfg);
  spec.b_values = cfg.b_values;
  spec.gkl_values = cfg.gkl_values;
  spec.workers = ghz::resolve_workers(cfg.workers);
  const ghz::SweepResult result = ghz::fidelity_vs_b(spec, ghz::git_blob_sha1(echo));

  const std::string prefix = o.output.empty() ? std::string("ghzsim-sweep") : o.output;
  write_file(prefix + ".csv", ghz::sweep_csv(result.rows));
  write_file(prefix + ".json", ghz::sweep_envelope(result, echo));
  std::size_t failed = 0;
  for (const auto& row : result.rows) failed += row.ok ? 0 : 1;
  std::printf("%zu points (%zu failed) on %zu workers; wrote %s.csv and %s.json\n",
              result.rows.size(), failed, spec.workers, prefix.c_str(), prefix.c_str());
  return failed == 0 ? 0 : kExitNumeric;
}

int cmd_validate(const Options& o) {
  const ghz::RunConfig cfg = load(o.config);
  const double b = cfg.b.value_or(8.0);
  bool all = true;
  for (const ghz::CheckResult& c : ghz::run_invariant_suite(ghz::to_setup(cfg), b)) {
    std::printf("%s  %-28s %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    all = all && c.passed;
  }
  return all ? 0 : kExitInvariant;
}

int cmd_oracle(const Options& o) {
  ghz::RunConfig cfg = load(o.config);
  const double b = o.b ? pick_b(cfg, o.b) : cfg.b.value_or(8.0);
  ghz::check_dispersive_ratio(b);
  ghz::require(o.slices >= 1, ghz::ErrorKind::config, "--slices must be at least 1");
  cfg.cutoffs.fill(o.cutoff);
  const ghz::ProtocolSetup setup = ghz::to_setup(cfg);
  bool ok = true;
  for (ghz::Step step : {ghz::Step::one, ghz::Step::two}) {
    const double td = ghz::step_oracle_check(setup, b, step, o.slices).trace_distance;
    std::printf("step %d: trace distance %.3e over %zu slices\n", static_cast<int>(step), td,
                o.slices);
    ok = ok && td < o.tolerance;
  }
  return ok ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GHZ photon Fock-state preparation in three cavities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(GHZSIM_VERSION));
  Options o;

  auto* run = app.add_subcommand("run", "single protocol execution");
  run->add_option("--config", o.config, "configuration file");
  run->add_option("--b", o.b, "b = delta/g");
  run->add_option("--gkl", o.gkl, "crosstalk g_kl in units of g_r");
  run->add_option("--output", o.output, "output prefix (default ghzsim-run)");

  auto* sweep = app.add_subcommand("sweep", "fidelity grid over b and g_kl");
  sweep->add_option("--config", o.config, "configuration file");
  sweep->add_option("--output", o.output, "output prefix (default ghzsim-sweep)");

  auto* validate = app.add_subcommand("validate", "run the invariant suite");
  validate->add_option("--config", o.config, "configuration file");

  auto* oracle = app.add_subcommand("oracle-check", "compare against the Liouvillian oracle");
  oracle->add_option("--config", o.config, "configuration file");
  oracle->add_option("--slices", o.slices, "piecewise-constant slices")->required();
  oracle->add_option("--b", o.b, "b = delta/g (default: config or 8)");
  oracle->add_option("--cutoff", o.cutoff, "Fock cutoff for every cavity")
      ->check(CLI::Range(1, 2));
  oracle->add_option("--tolerance", o.tolerance, "trace-distance tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(o);
    if (*sweep) return cmd_sweep(o);
    if (*validate) return cmd_validate(o);
    if (*oracle) return cmd_oracle(o);
  } catch (const ghz::Error& e) {
    std::fprintf(stderr, "ghzsim: %s\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ghzsim: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitConfig;
}
