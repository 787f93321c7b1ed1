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

#include "ghz/validate.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

#include "ghz/error.hpp"

namespace ghz {
namespace {

std::string fmt(const char* pattern, double v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
  try {
    return {name, true, body()};
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

void expect(bool ok, const std::string& what) {
  require(ok, ErrorKind::invariant, what);
}

std::string operator_algebra() {
  const HilbertSpace space({2, 2, 2});
  for (int n = 1; n <= 4; ++n) {
    const OperatorMatrix a = annihilation(n);
    OperatorMatrix expected = OperatorMatrix::identity(n + 1);
    expected(n, n) = Complex(-n);
    // sqrt(k)^2 rounds, so equality is to a few ulps.
    expect(max_abs_diff(commutator(a, a.adjoint()), expected) <= 8.0 * n * kEps,
           "[a, a+] differs from 1 - (N+1)|N><N|");
  }
  OperatorMatrix sum = OperatorMatrix::zeros(3);
  for (Level l : {Level::g, Level::e, Level::f}) sum += qutrit_projector(l);
  expect(sum == OperatorMatrix::identity(3), "qutrit projectors do not sum to 1");
  for (LevelPair p : kLevelPairs) {
    const OperatorMatrix up = raising(p);
    expect(up * lowering(p) == qutrit_projector(upper_level(p)), "S+ S- is not |upper><upper|");
    expect(commutator(sz_operator(p), up) == Complex(2.0) * up, "[Sz, S+] != 2 S+");
  }
  const OperatorMatrix q = lift(raising(LevelPair::fg), Slot::qutrit, space);
  for (int j = 1; j <= 3; ++j) {
    const OperatorMatrix aj = lift(annihilation(2), cavity_slot(j), space);
    expect(max_abs(commutator(q, aj)) == 0.0, "lifted operators on different slots do not commute");
    for (int k = j + 1; k <= 3; ++k) {
      const OperatorMatrix ak = lift(annihilation(2), cavity_slot(k), space);
      expect(max_abs(commutator(aj, ak.adjoint())) == 0.0, "distinct cavities do not commute");
    }
  }
  return "ladder, projector, S+/S- and lift identities hold exactly";
}

std::string hermiticity(const ProtocolSetup& setup, double b) {
  const HilbertSpace space(setup.cutoffs);
  const StepParams p1 = make_step_params(setup.physics, Step::one, b);
  const StepParams p2 = make_step_params(setup.physics, Step::two, b);
  const HarmonicOperator models[] = {ideal_step1_model(p1, space), full_step1_model(p1, space),
                                     full_step2_model(p2, space)};
  double worst = 0.0;
  for (const HarmonicOperator& h : models) {
    for (int k = 0; k < 16; ++k) {
      const OperatorMatrix m = h.at(k * 0.37e-9);
      const double err = hermiticity_error(m) / std::max(max_abs(m), 1e-300);
      worst = std::max(worst, err);
    }
  }
  expect(worst < 1e-12, fmt("relative Hermiticity error %.3g", worst));
  expect(hermiticity_error(effective_h0(p1, space)) == 0.0 &&
             hermiticity_error(effective_hI(p1, space)) < 1e-12 * max_abs(effective_hI(p1, space)),
         "effective Hamiltonians are not Hermitian");
  return fmt("max relative |H - H+| = %.3g", worst);
}

std::string excitation_conservation(const ProtocolSetup& setup, double b) {
  const HilbertSpace space(setup.cutoffs);
  const StepParams p1 = make_step_params(setup.physics, Step::one, b);
  // Both wanted transitions end on |f>, taking a photon from cavity 1 or 2.
  OperatorMatrix n_exc = lift(qutrit_projector(Level::f), Slot::qutrit, space);
  for (int j = 1; j <= 2; ++j) {
    const OperatorMatrix a = lift(annihilation(setup.cutoffs[j - 1]), cavity_slot(j), space);
    n_exc += a.adjoint() * a;
  }
  const HarmonicOperator h = ideal_step1_model(p1, space);
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    const OperatorMatrix m = h.at(k * 0.53e-9);
    worst = std::max(worst, spectral_norm(commutator(m, n_exc)) /
                                (spectral_norm(m) * spectral_norm(n_exc)));
  }
  expect(worst < 1e-10, fmt("relative |[H, N_exc]| = %.3g", worst));
  return fmt("relative |[H, N_exc]| = %.3g", worst);
}

std::string raman_identities(const ProtocolSetup& setup, double b) {
  const StepParams p1 = make_step_params(setup.physics, Step::one, b);
  const StepParams p2 = make_step_params(setup.physics, Step::two, b);
  const ProtocolSchedule s = make_schedule(p1, p2);
  const auto [ce, cg] = raman_analytic(s.t1, p1.g1(), p1.delta());
  const double gap = std::abs(ce.real() - cg.imag());
  expect(gap < 1e-12, fmt("cos - sin at t1 = %.3g", gap));

  const HilbertSpace space({1, 1, 1});
  const OperatorMatrix hi = effective_hI(p1, space);
  const std::size_t a = space.index(Level::e, {0, 1, 0});
  const std::size_t c = space.index(Level::g, {1, 0, 0});
  OperatorMatrix block(2, 2);
  block(0, 0) = hi(a, a);
  block(0, 1) = hi(a, c);
  block(1, 0) = hi(c, a);
  block(1, 1) = hi(c, c);
  const auto ev = hermitian_eigenvalues(block);
  const double lambda = p1.g1() * p1.g2() / p1.delta();
  const double err = std::max(std::abs(ev[0] + lambda), std::abs(ev[1] - lambda)) / lambda;
  expect(err < 1e-12, fmt("effective coupling eigenvalues off by %.3g (relative)", err));
  return fmt("cos - sin at t1 = %.3g; eigenvalues +-g1 g2/delta", gap);
}

std::string unitary_vs_analytic(const ProtocolSetup& setup) {
  const double b = 20.0;
  const HilbertSpace space({1, 1, 1});
  const StepParams p1 = make_step_params(setup.physics, Step::one, b);
  const double t1 = make_schedule(p1, make_step_params(setup.physics, Step::two, b)).t1;
  const StateVector psi =
      evolve_unitary(basis_state(Level::e, {0, 1, 0}, space), ideal_step1_model(p1, space), t1,
                     setup.integrator);
  const auto [ae, ag] = raman_analytic(t1, p1.g1(), p1.delta());
  const double err =
      std::max(std::abs(std::norm(psi[space.index(Level::e, {0, 1, 0})]) - std::norm(ae)),
               std::abs(std::norm(psi[space.index(Level::g, {1, 0, 0})]) - std::norm(ag)));
  const double bound = f_leak_bound(b);
  expect(err <= bound, fmt("population error %.4g exceeds 4/(4+b^2)", err));
  return fmt("b = 20 population error %.4g", err) + fmt(" <= %.4g", bound);
}

std::string trace_and_positivity(const ProtocolSetup& setup, double b) {
  ProtocolSetup small = setup;
  small.cutoffs = {1, 1, 1};
  const ProtocolResult r = run_protocol(make_protocol_inputs(small, b));
  double worst_trace = 0.0, worst_herm = 0.0, lowest = 1.0;
  for (const DensityMatrix* rho : {&r.after_step1, &r.final_state}) {
    worst_trace = std::max(worst_trace, std::abs(rho->trace() - 1.0));
    worst_herm = std::max(worst_herm, hermiticity_error(rho->matrix()));
    lowest = std::min(lowest, min_eigenvalue(rho->matrix()));
  }
  expect(worst_trace < 1e-8, fmt("trace drift %.3g", worst_trace));
  expect(worst_herm < 1e-9, fmt("Hermiticity error %.3g", worst_herm));
  expect(lowest >= -1e-9, fmt("eigenvalue %.3g", lowest));
  return fmt("trace drift %.3g", worst_trace) + fmt(", min eigenvalue %.3g", lowest);
}

std::string oracle(const ProtocolSetup& setup, double b, Step step) {
  const OracleComparison c = step_oracle_check(setup, b, step, 16);
  expect(c.trace_distance < 1e-6, fmt("trace distance %.3g", c.trace_distance));
  return fmt("trace distance %.3g over 16 slices", c.trace_distance);
}

}  // namespace

OracleComparison step_oracle_check(const ProtocolSetup& setup, double b, Step step,
                                   std::size_t slices) {
  const HilbertSpace space(setup.cutoffs);
  const StepParams p1 = make_step_params(setup.physics, Step::one, b);
  const StepParams p2 = make_step_params(setup.physics, Step::two, b);
  const ProtocolSchedule s = make_schedule(p1, p2, setup.t_d, setup.t_b);
  if (step == Step::one) {
    const DensityMatrix rho0 = DensityMatrix::from_state(basis_state(Level::e, {0, 1, 0}, space));
    return piecewise_oracle_check(full_step1_model(p1, space), setup.noise1, space, rho0, s.t1,
                                  slices, setup.integrator);
  }
  ComplexVector amp(space.dim());
  amp[space.index(Level::e, {0, 1, 0})] = 1.0 / std::numbers::sqrt2;
  amp[space.index(Level::g, {1, 0, 0})] = Complex(0.0, 1.0 / std::numbers::sqrt2);
  const DensityMatrix rho0 = DensityMatrix::from_state(StateVector(std::move(amp)));
  return piecewise_oracle_check(full_step2_model(p2, space), setup.noise2, space, rho0, s.t2,
                                slices, setup.integrator);
}

std::vector<CheckResult> run_invariant_suite(const ProtocolSetup& setup, double b) {
  ProtocolSetup small = setup;
  small.cutoffs = {1, 1, 1};
  return {
      run_check("operator algebra", operator_algebra),
      run_check("Hamiltonian Hermiticity", [&] { return hermiticity(setup, b); }),
      run_check("excitation conservation", [&] { return excitation_conservation(setup, b); }),
      run_check("Raman analytic identities", [&] { return raman_identities(setup, b); }),
      run_check("unitary vs Raman analytic", [&] { return unitary_vs_analytic(setup); }),
      run_check("trace and positivity", [&] { return trace_and_positivity(setup, b); }),
      run_check("oracle equivalence, step 1", [&] { return oracle(small, b, Step::one); }),
      run_check("oracle equivalence, step 2", [&] { return oracle(small, b, Step::two); }),
  };
}

}  // namespace ghz
