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

// Interaction-picture Hamiltonians for the two protocol steps.
//
// Every coupling has the rotating-wave form g (e^{i Delta t} A + h.c.), so a
// Hamiltonian is stored as a list of harmonic terms and evaluated on demand.
// Units: angular frequency (rad/s) throughout; time in seconds.

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "ghz/hilbert.hpp"
#include "ghz/sparse.hpp"

namespace ghz {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

class HarmonicOperator {
 public:
  explicit HarmonicOperator(std::size_t dim) : dim_(dim) {}

  static HarmonicOperator constant(OperatorMatrix op);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const HarmonicTerm> terms() const noexcept { return terms_; }

  // op * e^{i omega t}
  void add(OperatorMatrix op, double omega);

  // g (e^{i omega t} op + h.c.)
  void add_coupling(double g, const OperatorMatrix& op, double omega);

  OperatorMatrix at(double t) const;

  double max_frequency() const;  // max |omega| over terms
  double norm_bound() const;     // sum over terms of the max absolute row sum

 private:
  std::size_t dim_;
  std::vector<HarmonicTerm> terms_;
};

enum class Step { one = 1, two = 2 };

struct QutritSpectrum {
  double omega_eg = 0.0;
  double omega_fe = 0.0;

  double omega_fg() const { return omega_eg + omega_fe; }
  double omega(LevelPair pair) const;
};

struct CavitySet {
  std::array<double, 3> omega{};  // rad/s
  std::array<double, 3> kappa{};  // 1/s

  // Q_j = omega_j / kappa_j (infinite when kappa_j = 0).
  std::array<double, 3> quality_factors() const;
};

// Cavity pairs for crosstalk, in the order 12, 13, 23.
inline constexpr std::array<std::pair<int, int>, 3> kCavityPairs{{{1, 2}, {1, 3}, {2, 3}}};

// g_{j,xy} for every cavity j and qutrit transition xy (wanted and unwanted
// alike), the cavity-cavity crosstalk g_kl, and the resonant constant g_r.
struct CouplingSet {
  std::array<std::array<double, 3>, 3> qutrit_cavity{};
  std::array<double, 3> crosstalk{};
  double g_r = 0.0;

  double& at(int cavity, LevelPair pair);
  double at(int cavity, LevelPair pair) const;
};

struct StepParams {
  Step step = Step::one;
  QutritSpectrum spectrum;
  CavitySet cavities;
  CouplingSet couplings;

  // Common dispersive detuning omega_fg - omega_c1 (step one).
  double delta() const;
  // Delta_{j,xy} = omega_xy - omega_cj
  double detuning(int cavity, LevelPair pair) const;
  // Delta_kl = omega_cl - omega_ck
  double cavity_detuning(int k, int l) const;

  double g1() const { return couplings.at(1, LevelPair::fg); }
  double g2() const { return couplings.at(2, LevelPair::fe); }
  double b() const { return delta() / g1(); }

  // Throws ErrorKind::invalid_argument listing the first violated invariant.
  void validate() const;
};

// Unwanted couplings as multiples of each cavity's reference coupling: g for
// cavities 1 and 2, g_r for cavity 3. Indexed [cavity-1][LevelPair]. The
// wanted entries (1fg, 2fe in step one; 3eg in step two) are always 1.
struct CouplingRatios {
  std::array<std::array<double, 3>, 3> step1{};
  std::array<std::array<double, 3>, 3> step2{};

  static CouplingRatios defaults();
};

// Everything needed to derive both steps' parameters for a given b = delta/g.
struct PhysicalParameters {
  QutritSpectrum step1_spectrum{kTwoPi * 5e9, kTwoPi * 10e9};
  QutritSpectrum step2_spectrum{kTwoPi * 1e9, kTwoPi * 12e9};
  CavitySet cavities{{kTwoPi * 14e9, kTwoPi * 9e9, kTwoPi * 1e9}, {1e5, 1e5, 1e5}};
  double g_r = kTwoPi * 200e6;
  CouplingRatios ratios = CouplingRatios::defaults();
  std::array<double, 3> crosstalk{};  // g_12, g_13, g_23 in rad/s

  double delta() const { return step1_spectrum.omega_fg() - cavities.omega[0]; }
};

bool is_wanted(Step step, int cavity, LevelPair pair);

// Couplings follow g = delta / b with delta fixed by the step-one spectrum.
StepParams make_step_params(const PhysicalParameters& phys, Step step, double b);
StepParams default_params(Step step, double b = 8.0);

// Two wanted dispersive couplings only.
HarmonicOperator ideal_step1_model(const StepParams& p, const HilbertSpace& space);
OperatorMatrix ideal_step1_hamiltonian(double t, const StepParams& p, const HilbertSpace& space);

// ac-Stark shifts -(g1^2/delta) a1+a1 |g><g| - (g2^2/delta) a2+a2 |e><e|.
OperatorMatrix effective_h0(const StepParams& p, const HilbertSpace& space);
// Raman coupling -(g1 g2/delta) (a1+ a2 S-_eg + h.c.).
OperatorMatrix effective_hI(const StepParams& p, const HilbertSpace& space);

// All qutrit-cavity couplings and the crosstalk.
HarmonicOperator full_step1_model(const StepParams& p, const HilbertSpace& space);
OperatorMatrix full_step1_hamiltonian(double t, const StepParams& p, const HilbertSpace& space);

HarmonicOperator full_step2_model(const StepParams& p, const HilbertSpace& space);
OperatorMatrix full_step2_hamiltonian(double t, const StepParams& p, const HilbertSpace& space);

}  // namespace ghz
