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

#pragma once

// Fidelity grids over (b, g_kl) and numerical convergence scans. Points are
// independent and run on a fixed pool of worker threads.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "ghz/error.hpp"
#include "ghz/protocol.hpp"

namespace ghz {

template <class T>
struct Outcome {
  std::optional<T> value;
  std::string error;  // "kind: message" when value is empty
};

std::string describe(const std::exception& e);

// task(i) for i in [0, count) on `workers` threads; results keep input order
// and an exception in one task only marks that entry.
template <class Fn>
auto run_parallel(std::size_t count, std::size_t workers, Fn task)
    -> std::vector<Outcome<std::invoke_result_t<Fn&, std::size_t>>> {
  using T = std::invoke_result_t<Fn&, std::size_t>;
  require(workers >= 1, ErrorKind::invalid_argument, "worker count must be at least 1");
  std::vector<Outcome<T>> out(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i].value.emplace(task(i));
      } catch (const std::exception& e) {
        out[i].error = describe(e);
      }
    }
  };
  const std::size_t threads = std::min(workers, count);
  if (threads <= 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  return out;
}

struct SweepPoint {
  double b = 0.0;
  double gkl_over_gr = 0.0;
};

struct SweepRow {
  SweepPoint point;
  bool ok = false;
  std::string status;  // "ok" or "failed:<error kind>"
  std::string detail;  // failure message
  double fidelity = 0.0;
  double fidelity_phase_opt = 0.0;
  double optimal_phase = 0.0;
  double max_f_population = 0.0;
  double t1 = 0.0;
  double tau = 0.0;
  double dt_step1 = 0.0;
  double dt_step2 = 0.0;
  double wall_time = 0.0;  // seconds; not part of the deterministic output
};

struct SweepMetadata {
  std::string config_hash;
  PhotonNumbers cutoffs{};
  std::size_t workers = 1;
  double dt_step1_min = 0.0;
  double dt_step1_max = 0.0;
  double dt_step2_min = 0.0;
  double dt_step2_max = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepMetadata metadata;
};

struct SweepSpec {
  ProtocolSetup base;
  std::vector<double> b_values;
  std::vector<double> gkl_values{0.0};  // multiples of g_r, shared by g_12, g_13, g_23
  std::size_t workers = 1;

  void validate() const;
  // b-major grid.
  std::vector<SweepPoint> points() const;
};

SweepRow simulate_point(const ProtocolSetup& base, const SweepPoint& point);

std::vector<SweepRow> run_points(const ProtocolSetup& base, std::span<const SweepPoint> points,
                                 std::size_t workers);

SweepResult fidelity_vs_b(const SweepSpec& spec, std::string config_hash = {});

struct ConvergenceEntry {
  PhotonNumbers cutoffs{};
  IntegratorConfig integrator;
  double dt_step1 = 0.0;
  double fidelity = 0.0;
  double fidelity_phase_opt = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceEntry> entries;
  double max_spread = 0.0;            // literal fidelity
  double max_spread_phase_opt = 0.0;
};

// Every (cutoff, integrator) combination at one point; needs two of each.
ConvergenceTable convergence_scan(const ProtocolSetup& base, const SweepPoint& point,
                                  std::span<const PhotonNumbers> cutoffs,
                                  std::span<const IntegratorConfig> integrators,
                                  std::size_t workers = 1);

// GHZSIM_WORKERS when set, else the configured count, else hardware threads.
std::size_t resolve_workers(std::size_t configured);

}  // namespace ghz
