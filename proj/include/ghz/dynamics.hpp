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

// State propagation: Schrodinger and Lindblad, fixed-step RK4 with the
// Hamiltonian evaluated at the sub-stage times.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ghz/hamiltonian.hpp"
#include "ghz/hilbert.hpp"
#include "ghz/linalg.hpp"
#include "ghz/sparse.hpp"

namespace ghz {

// Checked on construction: Hermitian within 1e-10, unit trace within 1e-8,
// smallest eigenvalue >= -1e-9. Violations throw ErrorKind::invariant.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix from_state(const StateVector& psi);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  double trace() const { return m_.trace().real(); }
  double population(std::size_t index) const { return m_(index, index).real(); }

 private:
  ComplexMatrix m_;
};

// Rates in 1/s. gamma_relax and gamma_phi are indexed by LevelPair.
struct NoiseModel {
  Step step = Step::one;
  std::array<double, 3> kappa{};
  std::array<double, 3> gamma_relax{};
  std::array<double, 3> gamma_phi{};

  static NoiseModel none(Step step) { return NoiseModel{step, {}, {}, {}}; }

  double relax(LevelPair pair) const { return gamma_relax[static_cast<std::size_t>(pair)]; }
  double dephase(LevelPair pair) const { return gamma_phi[static_cast<std::size_t>(pair)]; }
  double total_rate() const;
  bool is_zero() const { return total_rate() == 0.0; }
  void validate() const;
};

NoiseModel default_noise(Step step);

struct IntegratorConfig {
  double dt = 0.0;  // seconds; 0 selects dt from the fastest frequency
  int points_per_period = 50;
  double max_frequency_hint = 0.0;  // rad/s, floor for the auto-selected frequency

  void validate() const;
};

// dt actually used for a model whose fastest frequency is model_frequency.
double resolve_dt(const IntegratorConfig& cfg, double model_frequency);

// Fastest rate in a Lindblad generator: harmonic frequencies, a bound on |H|,
// and the summed noise rates.
double generator_frequency(const HarmonicOperator& h, const NoiseModel& noise);

// Equal steps covering duration with each step no longer than dt_max.
std::size_t step_count(double duration, double dt_max);

// Direct dense evaluation of the master-equation right-hand side.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const OperatorMatrix& h,
                           const NoiseModel& noise, const HilbertSpace& space);

// Precomputed Lindblad generator for one Hamiltonian and noise model. Holds
// scratch buffers, so use one instance per trajectory.
class MasterEquation {
 public:
  MasterEquation(const HarmonicOperator& h, const NoiseModel& noise, const HilbertSpace& space);

  std::size_t dim() const noexcept { return dim_; }

  double max_frequency() const noexcept { return max_frequency_; }

  void rhs(double t, const ComplexMatrix& rho, ComplexMatrix& out);

  // n_steps RK4 steps of size dt starting at time t0.
  void advance(ComplexMatrix& rho, double t0, double dt, std::size_t n_steps);

 private:
  struct Jump {
    double rate;
    std::vector<std::uint32_t> rows;  // rows with a nonzero entry
    std::vector<std::uint32_t> src;   // column of that entry
    std::vector<Complex> vals;
  };

  void add_jump(double rate, const OperatorMatrix& op);

  std::size_t dim_;
  HarmonicCsr h_;
  CsrMatrix h_now_;
  std::vector<Jump> jumps_;
  std::vector<double> weights_;  // dephasing and anti-commutator terms, elementwise
  double max_frequency_ = 0.0;
  ComplexMatrix scratch_, k1_, k2_, k3_, k4_, stage_;
};

using SegmentObserver = std::function<void(double t, const ComplexMatrix& rho)>;

// Propagates rho0 for duration. When observer is set the interval is split
// into `segments` equal parts and observer runs after each one.
DensityMatrix evolve_master(const DensityMatrix& rho0, const HarmonicOperator& h,
                            const NoiseModel& noise, const HilbertSpace& space, double duration,
                            const IntegratorConfig& cfg, std::size_t segments = 1,
                            const SegmentObserver& observer = {});

StateVector evolve_unitary(const StateVector& psi0, const HarmonicOperator& h, double duration,
                           const IntegratorConfig& cfg);

// Amplitudes of |e,0,1> and |g,1,0> under the effective Raman coupling,
// (cos(g^2 t/delta), i sin(g^2 t/delta)), optionally times e^{i g^2 t/delta}.
std::pair<Complex, Complex> raman_analytic(double t, double g, double delta,
                                           bool original_picture = false);

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double purity(const ComplexMatrix& rho);
double min_eigenvalue(const ComplexMatrix& rho);

}  // namespace ghz
