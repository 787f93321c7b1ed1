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

// Two-step GHZ preparation: Raman step on cavities 1-2, then the resonant
// transfer into cavity 3, with optional idle segments between them.

#include <array>
#include <cstddef>
#include <optional>
#include <utility>

#include "ghz/dynamics.hpp"
#include "ghz/hamiltonian.hpp"
#include "ghz/hilbert.hpp"

namespace ghz {

struct ProtocolSchedule {
  double t1 = 0.0;   // delta pi / (4 g^2)
  double t2 = 0.0;   // pi / (2 g_r)
  double t_d = 0.0;  // level-adjustment dead time
  double t_b = 0.0;  // barrier-adjustment dead time

  double tau() const { return t1 + t2 + 3.0 * t_d + t_b; }
  void validate() const;
};

ProtocolSchedule make_schedule(const StepParams& step1, const StepParams& step2, double t_d = 0.0,
                               double t_b = 0.0);

// -i (|g,0,1,1> - |g,1,0,0>) / sqrt(2)
struct GhzTarget {
  StateVector state;
  std::size_t index_011 = 0;  // |g,0,1,1>
  std::size_t index_100 = 0;  // |g,1,0,0>

  static GhzTarget standard(const HilbertSpace& space);
};

struct ConditionFlags {
  bool tau_vs_qutrit = false;  // tau << T1, T2 of the qutrit
  bool tau_vs_cavity = false;  // tau << T_cav
  bool crosstalk_detuned = false;  // |Delta_kl| >> g_kl
};

// "<<" and ">>" are read as a factor of at least kConditionMargin.
inline constexpr double kConditionMargin = 10.0;

struct Diagnostics {
  double b = 0.0;
  double p_leak = 0.0;
  double t_cav = 0.0;
  double tau = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double max_f_population = 0.0;
  double dt_step1 = 0.0;
  double dt_step2 = 0.0;
  ConditionFlags flags;
};

struct ProtocolInputs {
  StepParams step1;
  StepParams step2;
  NoiseModel noise1;
  NoiseModel noise2;
  ProtocolSchedule schedule;
  HilbertSpace space;
  IntegratorConfig integrator;
  std::array<double, 3> nbar{1.0, 1.0, 1.0};
};

struct ProtocolResult {
  DensityMatrix final_state;
  DensityMatrix after_step1;
  Diagnostics diagnostics;
  double fidelity = 0.0;
  double fidelity_phase_opt = 0.0;
  double optimal_phase = 0.0;
};

// Number of uniform samples of the |f> population taken during step one.
inline constexpr std::size_t kLeakageSamples = 128;

ProtocolResult run_protocol(const ProtocolInputs& in);

// Everything except b and the crosstalk strength.
struct ProtocolSetup {
  PhysicalParameters physics;
  NoiseModel noise1 = default_noise(Step::one);
  NoiseModel noise2 = default_noise(Step::two);
  double t_d = 0.0;
  double t_b = 0.0;
  PhotonNumbers cutoffs{2, 2, 2};
  IntegratorConfig integrator;
  std::array<double, 3> nbar{1.0, 1.0, 1.0};
};

// Rejects b <= 2, where the dispersive expansion behind t1 breaks down.
void check_dispersive_ratio(double b);

// gkl_over_gr, when given, sets g_12 = g_13 = g_23 = gkl_over_gr * g_r.
ProtocolInputs make_protocol_inputs(const ProtocolSetup& setup, double b,
                                    std::optional<double> gkl_over_gr = std::nullopt);

double fidelity(const DensityMatrix& rho, const GhzTarget& target);

// max over phi of <psi(phi)|rho|psi(phi)>, psi(phi) = (|g,0,1,1> + e^{i phi}|g,1,0,0>)/sqrt(2).
// Returns (F_max, phi) with phi in [0, 2 pi) and phi = 0 when the coherence vanishes.
std::pair<double, double> phase_optimized_ghz_fidelity(const DensityMatrix& rho,
                                                       const HilbertSpace& space);

double level_population(const ComplexMatrix& rho, const HilbertSpace& space, Level level);

double f_leak_bound(double b);

struct CavityLifetimes {
  std::array<double, 3> per_cavity{};
  double t_cav = 0.0;  // min / 3
};

CavityLifetimes cavity_lifetimes(const std::array<double, 3>& q,
                                 const std::array<double, 3>& omega_c,
                                 const std::array<double, 3>& nbar);

// g_r (C_k + C_l) / C_sigma
double crosstalk_estimate(double c_k, double c_l, double c_sigma, double g_r);

}  // namespace ghz
