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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ghz/error.hpp"
#include "ghz/protocol.hpp"
#include "support.hpp"

namespace {

using ghz::Complex;
using ghz::DensityMatrix;
using ghz::HilbertSpace;
using ghz::Level;
using ghz::LevelPair;
using ghz::Step;

constexpr double kPi = std::numbers::pi;

DensityMatrix pure(const HilbertSpace& s, std::vector<std::pair<ghz::PhotonNumbers, Complex>> terms,
                   Level level = Level::g) {
  std::vector<Complex> amp(s.dim());
  for (const auto& [n, c] : terms) amp[s.index(level, n)] += c;
  return DensityMatrix::from_state(ghz::StateVector::normalized(amp));
}

// b at which the generalized Rabi oscillation into |f> completes k cycles by t1.
double commensurate_b(int k) { return std::sqrt(-4.0 + std::sqrt(16.0 + 64.0 * k * k)); }

void drop_unwanted(ghz::StepParams& p) {
  for (int j = 1; j <= 3; ++j)
    for (LevelPair pair : ghz::kLevelPairs)
      if (!ghz::is_wanted(p.step, j, pair)) p.couplings.at(j, pair) = 0.0;
  p.couplings.crosstalk = {};
}

ghz::ProtocolInputs ideal_inputs(double b) {
  ghz::ProtocolSetup setup;
  setup.cutoffs = {1, 1, 1};
  setup.noise1 = ghz::NoiseModel::none(Step::one);
  setup.noise2 = ghz::NoiseModel::none(Step::two);
  auto in = ghz::make_protocol_inputs(setup, b, 0.0);
  // Same step size as the full model, whose fastest term sits at omega_c1 - omega_eg.
  in.integrator.max_frequency_hint = ghz::full_step1_model(in.step1, in.space).max_frequency();
  drop_unwanted(in.step1);
  drop_unwanted(in.step2);
  return in;
}

TEST(Fidelity, TargetAndBasisStates) {
  const HilbertSpace s;
  const auto target = ghz::GhzTarget::standard(s);
  const Complex mi(0.0, -1.0);
  EXPECT_NEAR(ghz::fidelity(pure(s, {{{0, 1, 1}, mi}, {{1, 0, 0}, -mi}}), target), 1.0, 1e-14);
  EXPECT_NEAR(ghz::fidelity(pure(s, {{{0, 1, 1}, 1.0}}), target), 0.5, 1e-14);
  EXPECT_NEAR(ghz::fidelity(pure(s, {{{0, 1, 0}, 1.0}}), target), 0.0, 1e-14);
  const Complex phase = std::polar(1.0, 0.7);
  EXPECT_NEAR(ghz::fidelity(pure(s, {{{0, 1, 1}, phase}, {{1, 0, 0}, -phase}}), target), 1.0, 1e-14);
  EXPECT_NEAR(std::norm(target.state[target.index_011]), 0.5, 1e-15);
  EXPECT_EQ(target.state[target.index_011], -target.state[target.index_100]);
  EXPECT_THROW(ghz::fidelity(pure(HilbertSpace({1, 1, 1}), {{{0, 1, 1}, 1.0}}), target), ghz::Error);
}

TEST(Fidelity, PhaseOptimized) {
  const HilbertSpace s;
  auto [f, phi] = ghz::phase_optimized_ghz_fidelity(pure(s, {{{0, 1, 1}, 1.0}, {{1, 0, 0}, -1.0}}), s);
  EXPECT_NEAR(f, 1.0, 1e-14);
  EXPECT_NEAR(phi, kPi, 1e-14);

  ghz::ComplexMatrix mixed(s.dim(), s.dim());
  mixed(s.index(Level::g, {0, 1, 1}), s.index(Level::g, {0, 1, 1})) = 0.5;
  mixed(s.index(Level::g, {1, 0, 0}), s.index(Level::g, {1, 0, 0})) = 0.5;
  std::tie(f, phi) = ghz::phase_optimized_ghz_fidelity(DensityMatrix(mixed), s);
  EXPECT_NEAR(f, 0.5, 1e-15);
  EXPECT_EQ(phi, 0.0);

  const auto target = ghz::GhzTarget::standard(s);
  for (double a : {0.1, 1.3, 2.9, 4.4}) {
    const auto rho = pure(s, {{{0, 1, 1}, 0.8}, {{1, 0, 0}, std::polar(0.5, a)}, {{0, 0, 0}, 0.3}});
    const auto [fo, po] = ghz::phase_optimized_ghz_fidelity(rho, s);
    EXPECT_GE(fo + 1e-15, ghz::fidelity(rho, target));
    EXPECT_GE(po, 0.0);
    EXPECT_LT(po, 2.0 * kPi);
    // psi(phi) at the returned phase reaches F_max.
    std::vector<Complex> amp(s.dim());
    amp[s.index(Level::g, {0, 1, 1})] = 1.0;
    amp[s.index(Level::g, {1, 0, 0})] = std::polar(1.0, po);
    const auto psi = ghz::StateVector::normalized(amp);
    const double direct = ghz::inner(psi.amplitudes(), rho.matrix() * psi.amplitudes()).real();
    EXPECT_NEAR(direct, fo, 1e-14);
  }
}

TEST(Helpers, LeakBound) {
  EXPECT_DOUBLE_EQ(ghz::f_leak_bound(8.0), 4.0 / 68.0);
  EXPECT_THROW(ghz::f_leak_bound(0.0), ghz::Error);
}

TEST(Helpers, CavityLifetimes) {
  const auto c = ghz::cavity_lifetimes({1e5, 1e5, 1e5}, {2 * kPi * 1e9, 2 * kPi * 2e9, 2 * kPi * 4e9},
                                       {1.0, 1.0, 1.0});
  EXPECT_NEAR(c.per_cavity[0], 15.9155e-6, 1e-10);
  EXPECT_NEAR(c.t_cav, c.per_cavity[2] / 3.0, 1e-20);
  const auto d = ghz::cavity_lifetimes({2e5, 1e5, 1e5}, {2 * kPi * 1e9, 2 * kPi * 2e9, 2 * kPi * 4e9},
                                       {1.0, 2.0, 1.0});
  EXPECT_NEAR(d.per_cavity[0], 2.0 * c.per_cavity[0], 1e-18);
  EXPECT_NEAR(d.per_cavity[1], 0.5 * c.per_cavity[1], 1e-18);
  const auto q = ghz::default_params(Step::one).cavities.quality_factors();
  EXPECT_NEAR(q[0], 8.796e5, 1e2);
  EXPECT_THROW(ghz::cavity_lifetimes({0.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}), ghz::Error);
}

TEST(Helpers, CrosstalkEstimate) {
  EXPECT_NEAR(ghz::crosstalk_estimate(1.0, 1.0, 100.0, 1.0), 0.02, 1e-15);
  EXPECT_NEAR(ghz::crosstalk_estimate(2.0, 2.0, 100.0, 1.0), 0.04, 1e-15);
  EXPECT_THROW(ghz::crosstalk_estimate(60.0, 50.0, 100.0, 1.0), ghz::Error);
  EXPECT_THROW(ghz::crosstalk_estimate(-1.0, 1.0, 100.0, 1.0), ghz::Error);
}

TEST(Schedule, TimingIdentities) {
  for (double b : {3.0, 8.0, 14.0}) {
    const auto p1 = ghz::default_params(Step::one, b);
    const auto p2 = ghz::default_params(Step::two, b);
    const auto s = ghz::make_schedule(p1, p2, 2e-9, 5e-9);
    EXPECT_NEAR(s.t1 * 4.0 * p1.g1() * p1.g2() / (kPi * std::abs(p1.delta())), 1.0, 1e-12);
    EXPECT_NEAR(s.t2 * 2.0 * p2.couplings.g_r / kPi, 1.0, 1e-12);
    EXPECT_NEAR(s.tau(), s.t1 + s.t2 + 6e-9 + 5e-9, 1e-12 * s.tau());
  }
  EXPECT_NEAR(ghz::make_schedule(ghz::default_params(Step::one), ghz::default_params(Step::two)).t1,
              8e-9, 1e-20);
  EXPECT_THROW(ghz::make_schedule(ghz::default_params(Step::one), ghz::default_params(Step::two), -1e-9),
               ghz::Error);
}

TEST(Schedule, DispersiveGuard) {
  for (double b : {0.0, 1.0, 2.0, -3.0}) {
    try {
      ghz::check_dispersive_ratio(b);
      FAIL() << "accepted b = " << b;
    } catch (const ghz::Error& e) {
      EXPECT_EQ(e.kind(), ghz::ErrorKind::invalid_argument);
      EXPECT_NE(std::string(e.what()).find("dispersive-regime guard"), std::string::npos);
    }
  }
  EXPECT_NO_THROW(ghz::check_dispersive_ratio(2.5));
  EXPECT_THROW(ghz::make_protocol_inputs(ghz::ProtocolSetup{}, 2.0), ghz::Error);
}

TEST(Protocol, InputsCarryCrosstalk) {
  const auto in = ghz::make_protocol_inputs(ghz::ProtocolSetup{}, 8.0, 0.4);
  for (double g : in.step1.couplings.crosstalk) EXPECT_DOUBLE_EQ(g, 0.4 * in.step1.couplings.g_r);
  for (double g : in.step2.couplings.crosstalk) EXPECT_DOUBLE_EQ(g, 0.4 * in.step2.couplings.g_r);
  EXPECT_EQ(in.space.dim(), 81u);
}

TEST(Protocol, IdealLimitReachesTarget) {
  const double b = commensurate_b(9);
  EXPECT_NEAR(b, 8.253, 1e-3);
  const auto in = ideal_inputs(b);
  const auto r = ghz::run_protocol(in);
  EXPECT_GE(r.fidelity, 0.999);
  EXPECT_GE(ghz::level_population(r.final_state.matrix(), in.space, Level::g), 0.999);
  EXPECT_LE(r.diagnostics.max_f_population, ghz::f_leak_bound(b) + 1e-9);
  EXPECT_GE(r.fidelity_phase_opt, r.fidelity);
}

TEST(Protocol, IdealMidpoint) {
  const double b = commensurate_b(288);
  const auto in = ideal_inputs(b);
  const auto r = ghz::run_protocol(in);
  const auto& rho = r.after_step1;
  EXPECT_NEAR(rho.population(in.space.index(Level::e, {0, 1, 0})), 0.5, 1e-3);
  EXPECT_NEAR(rho.population(in.space.index(Level::g, {1, 0, 0})), 0.5, 1e-3);
}

TEST(Protocol, DiagnosticsAndInvariantsWithNoise) {
  ghz::ProtocolSetup setup;
  setup.cutoffs = {1, 1, 1};
  setup.t_d = 1e-9;
  const auto in = ghz::make_protocol_inputs(setup, 8.0, 0.0);
  const auto r = ghz::run_protocol(in);
  EXPECT_NEAR(r.final_state.trace(), 1.0, 1e-8);
  EXPECT_GE(ghz::min_eigenvalue(r.final_state.matrix()), -1e-9);
  EXPECT_GT(r.fidelity, 0.5);
  EXPECT_LE(r.fidelity, r.fidelity_phase_opt);
  const auto& d = r.diagnostics;
  EXPECT_DOUBLE_EQ(d.b, 8.0);
  EXPECT_DOUBLE_EQ(d.tau, in.schedule.tau());
  EXPECT_NEAR(d.p_leak, 4.0 / 68.0, 1e-15);
  EXPECT_GT(d.max_f_population, 0.0);
  EXPECT_GT(d.dt_step1, 0.0);
  EXPECT_GT(d.dt_step2, 0.0);
  EXPECT_TRUE(d.flags.tau_vs_cavity);
  EXPECT_TRUE(d.flags.tau_vs_qutrit);
}

}  // namespace
