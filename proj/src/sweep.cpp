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

#include "ghz/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace ghz {
namespace {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::shape: return "shape";
    case ErrorKind::singular_detuning: return "singular_detuning";
    case ErrorKind::step_size: return "step_size";
    case ErrorKind::oracle_refused: return "oracle_refused";
    case ErrorKind::config: return "config";
    case ErrorKind::invariant: return "invariant";
  }
  return "error";
}

}  // namespace

std::string describe(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return std::string(kind_name(err->kind())) + ": " + err->what();
  }
  return std::string("error: ") + e.what();
}

void SweepSpec::validate() const {
  for (double b : b_values) check_dispersive_ratio(b);
  for (double g : gkl_values) {
    require(std::isfinite(g) && g >= 0.0, ErrorKind::invalid_argument,
            "g_kl/g_r values must be finite and non-negative");
  }
  require(workers >= 1, ErrorKind::invalid_argument, "worker count must be at least 1");
}

std::vector<SweepPoint> SweepSpec::points() const {
  std::vector<SweepPoint> out;
  out.reserve(b_values.size() * gkl_values.size());
  for (double b : b_values) {
    for (double g : gkl_values) out.push_back({b, g});
  }
  return out;
}

SweepRow simulate_point(const ProtocolSetup& base, const SweepPoint& point) {
  const auto start = std::chrono::steady_clock::now();
  const ProtocolResult r = run_protocol(make_protocol_inputs(base, point.b, point.gkl_over_gr));
  SweepRow row;
  row.point = point;
  row.ok = true;
  row.status = "ok";
  row.fidelity = r.fidelity;
  row.fidelity_phase_opt = r.fidelity_phase_opt;
  row.optimal_phase = r.optimal_phase;
  row.max_f_population = r.diagnostics.max_f_population;
  row.t1 = r.diagnostics.t1;
  row.tau = r.diagnostics.tau;
  row.dt_step1 = r.diagnostics.dt_step1;
  row.dt_step2 = r.diagnostics.dt_step2;
  row.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<SweepRow> run_points(const ProtocolSetup& base, std::span<const SweepPoint> points,
                                 std::size_t workers) {
  auto outcomes =
      run_parallel(points.size(), workers, [&](std::size_t i) { return simulate_point(base, points[i]); });
  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (outcomes[i].value) {
      rows.push_back(std::move(*outcomes[i].value));
    } else {
      SweepRow row;
      row.point = points[i];
      const std::string& err = outcomes[i].error;
      row.status = "failed:" + err.substr(0, err.find(':'));
      row.detail = err;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.fidelity = row.fidelity_phase_opt = row.optimal_phase = row.max_f_population = nan;
      row.t1 = row.tau = row.dt_step1 = row.dt_step2 = nan;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

SweepResult fidelity_vs_b(const SweepSpec& spec, std::string config_hash) {
  spec.validate();
  const std::vector<SweepPoint> points = spec.points();
  SweepResult result;
  result.rows = run_points(spec.base, points, spec.workers);
  SweepMetadata& m = result.metadata;
  m.config_hash = std::move(config_hash);
  m.cutoffs = spec.base.cutoffs;
  m.workers = spec.workers;
  bool first = true;
  for (const SweepRow& row : result.rows) {
    if (!row.ok) continue;
    if (first) {
      m.dt_step1_min = m.dt_step1_max = row.dt_step1;
      m.dt_step2_min = m.dt_step2_max = row.dt_step2;
      first = false;
    }
    m.dt_step1_min = std::min(m.dt_step1_min, row.dt_step1);
    m.dt_step1_max = std::max(m.dt_step1_max, row.dt_step1);
    m.dt_step2_min = std::min(m.dt_step2_min, row.dt_step2);
    m.dt_step2_max = std::max(m.dt_step2_max, row.dt_step2);
  }
  return result;
}

ConvergenceTable convergence_scan(const ProtocolSetup& base, const SweepPoint& point,
                                  std::span<const PhotonNumbers> cutoffs,
                                  std::span<const IntegratorConfig> integrators,
                                  std::size_t workers) {
  require(cutoffs.size() >= 2 && integrators.size() >= 2, ErrorKind::invalid_argument,
          "convergence scan needs at least two cutoffs and two integrator settings");
  std::vector<ProtocolSetup> setups;
  for (const PhotonNumbers& c : cutoffs) {
    for (const IntegratorConfig& i : integrators) {
      ProtocolSetup s = base;
      s.cutoffs = c;
      s.integrator = i;
      setups.push_back(s);
    }
  }
  auto outcomes = run_parallel(setups.size(), workers,
                               [&](std::size_t i) { return simulate_point(setups[i], point); });

  ConvergenceTable table;
  for (std::size_t i = 0; i < setups.size(); ++i) {
    if (!outcomes[i].value) fail(ErrorKind::step_size, outcomes[i].error);
    const SweepRow& row = *outcomes[i].value;
    table.entries.push_back({setups[i].cutoffs, setups[i].integrator, row.dt_step1, row.fidelity,
                             row.fidelity_phase_opt});
  }
  for (const auto& a : table.entries) {
    for (const auto& b : table.entries) {
      table.max_spread = std::max(table.max_spread, std::abs(a.fidelity - b.fidelity));
      table.max_spread_phase_opt =
          std::max(table.max_spread_phase_opt, std::abs(a.fidelity_phase_opt - b.fidelity_phase_opt));
    }
  }
  return table;
}

std::size_t resolve_workers(std::size_t configured) {
  if (const char* env = std::getenv("GHZSIM_WORKERS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    require(end && *end == '\0' && v >= 1, ErrorKind::config,
            std::string("GHZSIM_WORKERS must be a positive integer, got '") + env + "'");
    return static_cast<std::size_t>(v);
  }
  if (configured > 0) return configured;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace ghz
