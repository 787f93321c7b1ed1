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

#include <numbers>
#include <random>

#include "ghz/error.hpp"
#include "ghz/hamiltonian.hpp"
#include "support.hpp"

namespace {

using ghz::Complex;
using ghz::HilbertSpace;
using ghz::kTwoPi;
using ghz::Level;
using ghz::LevelPair;
using ghz::Step;
namespace gt = ghz::testing;

const Complex kI(0.0, 1.0);

double rel_herm(const ghz::OperatorMatrix& h) {
  return ghz::hermiticity_error(h) / ghz::max_abs(h);
}

TEST(Parameters, DefaultStepOne) {
  const auto p = ghz::default_params(Step::one);
  EXPECT_NEAR(p.delta(), kTwoPi * 1e9, 1e-4);
  EXPECT_NEAR(p.detuning(2, LevelPair::fe), kTwoPi * 1e9, 1e-4);
  EXPECT_NEAR(p.g1(), kTwoPi * 125e6, 1e-6);
  EXPECT_EQ(p.g1(), p.g2());
  EXPECT_NEAR(p.spectrum.omega_fg(), kTwoPi * 15e9, 1e-3);
  const double g = p.g1(), gr = p.couplings.g_r;
  EXPECT_DOUBLE_EQ(p.couplings.at(1, LevelPair::eg), 0.1 * g);
  EXPECT_DOUBLE_EQ(p.couplings.at(1, LevelPair::fe), g);
  EXPECT_DOUBLE_EQ(p.couplings.at(2, LevelPair::eg), 0.1 * g);
  EXPECT_DOUBLE_EQ(p.couplings.at(2, LevelPair::fg), g);
  EXPECT_DOUBLE_EQ(p.couplings.at(3, LevelPair::eg), 0.1 * gr);
  EXPECT_DOUBLE_EQ(p.couplings.at(3, LevelPair::fe), gr);
  EXPECT_DOUBLE_EQ(p.couplings.at(3, LevelPair::fg), gr);
  // Cavity-3 detunings in step one.
  EXPECT_NEAR(p.detuning(3, LevelPair::fe), kTwoPi * 9e9, 1e-3);
  EXPECT_NEAR(p.detuning(3, LevelPair::fg), kTwoPi * 14e9, 1e-3);
  EXPECT_NEAR(p.detuning(3, LevelPair::eg), kTwoPi * 4e9, 1e-3);
}

TEST(Parameters, DefaultStepTwo) {
  const auto p = ghz::default_params(Step::two);
  EXPECT_EQ(p.detuning(3, LevelPair::eg), 0.0);
  EXPECT_NEAR(p.spectrum.omega_fg(), kTwoPi * 13e9, 1e-3);
  const double g = ghz::default_params(Step::one).g1();
  for (LevelPair pair : ghz::kLevelPairs) {
    EXPECT_DOUBLE_EQ(p.couplings.at(1, pair), g);
    EXPECT_DOUBLE_EQ(p.couplings.at(2, pair), g);
    EXPECT_DOUBLE_EQ(p.couplings.at(3, pair), p.couplings.g_r);
  }
}

TEST(Parameters, GFollowsB) {
  EXPECT_NEAR(ghz::default_params(Step::one, 8.0).g1() / kTwoPi, 125e6, 1e-3);
  EXPECT_NEAR(ghz::default_params(Step::one, 10.0).g1() / kTwoPi, 100e6, 1e-3);
  EXPECT_THROW(ghz::default_params(Step::one, 0.0), ghz::Error);
}

TEST(Parameters, ValidationRejectsBrokenSpectra) {
  auto p = ghz::default_params(Step::one);
  p.cavities.omega[1] += kTwoPi * 1e6;  // detunings no longer equal
  EXPECT_THROW(p.validate(), ghz::Error);
  auto q = ghz::default_params(Step::two);
  q.spectrum.omega_eg *= 1.001;
  EXPECT_THROW(q.validate(), ghz::Error);
  auto r = ghz::default_params(Step::one);
  r.cavities.omega[2] = r.cavities.omega[1];
  EXPECT_THROW(r.validate(), ghz::Error);
  auto s = ghz::default_params(Step::one);
  s.couplings.crosstalk[0] = -1.0;
  EXPECT_THROW(s.validate(), ghz::Error);
}

TEST(Parameters, QualityFactors) {
  const auto q = ghz::default_params(Step::one).cavities.quality_factors();
  EXPECT_NEAR(q[0], kTwoPi * 14e9 / 1e5, 1e-3);
  ghz::CavitySet c = ghz::default_params(Step::one).cavities;
  c.kappa[0] = 0.0;
  EXPECT_TRUE(std::isinf(c.quality_factors()[0]));
}

TEST(IdealHamiltonian, MatrixElements) {
  const HilbertSpace s;
  const auto p = ghz::default_params(Step::one);
  const auto h0 = ghz::ideal_step1_hamiltonian(0.0, p, s);
  EXPECT_NEAR(std::abs(h0(s.index(Level::f, {0, 1, 0}), s.index(Level::g, {1, 1, 0})) - p.g1()), 0.0, 1e-6);
  const double t = 0.37e-9;
  const auto ht = ghz::ideal_step1_hamiltonian(t, p, s);
  const Complex expected = p.g2() * std::exp(kI * p.delta() * t);
  EXPECT_LT(std::abs(ht(s.index(Level::f, {0, 0, 0}), s.index(Level::e, {0, 1, 0})) - expected),
            1e-9 * p.g2());
}

TEST(IdealHamiltonian, MatchesReference) {
  const ghz::PhotonNumbers n{2, 2, 2};
  auto p = ghz::default_params(Step::one);
  for (int j = 1; j <= 3; ++j)
    for (LevelPair pair : ghz::kLevelPairs)
      if (!ghz::is_wanted(Step::one, j, pair)) p.couplings.at(j, pair) = 0.0;
  for (double t : {0.0, 1e-10, 2.3e-9}) {
    const auto h = ghz::ideal_step1_hamiltonian(t, p, HilbertSpace(n));
    EXPECT_LT((gt::to_eigen(h) - gt::hamiltonian(t, p, n)).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(IdealHamiltonian, ConservesExcitations) {
  const HilbertSpace s;
  const auto p = ghz::default_params(Step::one);
  // Both wanted transitions end on |f> and take one photon from cavity 1 or 2.
  ghz::OperatorMatrix n_exc = ghz::lift(ghz::qutrit_projector(Level::f), ghz::Slot::qutrit, s);
  for (int j = 1; j <= 2; ++j) {
    const auto a = ghz::lift(ghz::annihilation(2), ghz::cavity_slot(j), s);
    n_exc += a.adjoint() * a;
  }
  for (double t : {0.0, 0.4e-9, 3.1e-9}) {
    const auto h = ghz::ideal_step1_hamiltonian(t, p, s);
    const double c = ghz::spectral_norm(ghz::commutator(h, n_exc));
    EXPECT_LT(c, 1e-10 * ghz::spectral_norm(h) * ghz::spectral_norm(n_exc));
  }
}

TEST(EffectiveHamiltonian, StarkShifts) {
  const HilbertSpace s;
  const auto p = ghz::default_params(Step::one);
  const auto h0 = ghz::effective_h0(p, s);
  const double shift = p.g1() * p.g1() / p.delta();
  EXPECT_NEAR(h0(s.index(Level::g, {1, 0, 0}), s.index(Level::g, {1, 0, 0})).real(), -shift, 1e-6);
  EXPECT_NEAR(h0(s.index(Level::e, {0, 2, 0}), s.index(Level::e, {0, 2, 0})).real(), -2.0 * shift, 1e-6);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t k = 0; k < s.dim(); ++k) {
      if (i != k) EXPECT_EQ(h0(i, k), Complex(0.0));
    }
    if (s.label(i).level == Level::f) EXPECT_EQ(h0(i, i), Complex(0.0));
  }
}

TEST(EffectiveHamiltonian, RamanCoupling) {
  const HilbertSpace s;
  const auto p = ghz::default_params(Step::one);
  const auto hi = ghz::effective_hI(p, s);
  const double lambda = p.g1() * p.g2() / p.delta();
  EXPECT_NEAR(hi(s.index(Level::g, {1, 0, 0}), s.index(Level::e, {0, 1, 0})).real(), -lambda, 1e-6);
  EXPECT_NEAR(lambda / kTwoPi, 15.625e6, 1e-3);
  EXPECT_LT(rel_herm(hi), 1e-15);
  const auto vac = ghz::basis_state(Level::g, {0, 0, 0}, s);
  EXPECT_EQ(ghz::norm(hi * vac.amplitudes()), 0.0);

  // The {|e,0,1,0>, |g,1,0,0>} block has eigenvalues -+ g1 g2/delta.
  const std::size_t a = s.index(Level::e, {0, 1, 0}), b = s.index(Level::g, {1, 0, 0});
  ghz::OperatorMatrix block(2, 2);
  block(0, 0) = hi(a, a);
  block(0, 1) = hi(a, b);
  block(1, 0) = hi(b, a);
  block(1, 1) = hi(b, b);
  const auto ev = ghz::hermitian_eigenvalues(block);
  EXPECT_NEAR(ev[0], -lambda, 1e-6);
  EXPECT_NEAR(ev[1], lambda, 1e-6);
}

TEST(EffectiveHamiltonian, SingularDetuning) {
  auto p = ghz::default_params(Step::one);
  p.cavities.omega[0] = p.spectrum.omega_fg();
  p.cavities.omega[1] = p.spectrum.omega_fe;
  try {
    ghz::effective_hI(p, HilbertSpace());
    FAIL() << "expected singular detuning";
  } catch (const ghz::Error& e) {
    EXPECT_EQ(e.kind(), ghz::ErrorKind::singular_detuning);
  }
  EXPECT_THROW(ghz::effective_h0(p, HilbertSpace()), ghz::Error);
  EXPECT_THROW(ghz::effective_h0(ghz::default_params(Step::two), HilbertSpace()), ghz::Error);
}

TEST(FullHamiltonian, StepOneMatchesReference) {
  const ghz::PhotonNumbers n{2, 2, 2};
  auto p = ghz::default_params(Step::one);
  p.couplings.crosstalk = {0.3 * p.couplings.g_r, 0.5 * p.couplings.g_r, 0.7 * p.couplings.g_r};
  const auto model = ghz::full_step1_model(p, HilbertSpace(n));
  for (double t : {0.0, 1.3e-10, 4.7e-9}) {
    const gt::Mat ref = gt::hamiltonian(t, p, n);
    EXPECT_LT((gt::to_eigen(model.at(t)) - ref).cwiseAbs().maxCoeff(), 1e-6 * ref.cwiseAbs().maxCoeff());
  }
}

TEST(FullHamiltonian, StepTwoMatchesReference) {
  const ghz::PhotonNumbers n{1, 2, 1};
  auto p = ghz::default_params(Step::two);
  p.couplings.crosstalk.fill(0.4 * p.couplings.g_r);
  const auto model = ghz::full_step2_model(p, HilbertSpace(n));
  for (double t : {0.0, 2.1e-10, 1.1e-9}) {
    const gt::Mat ref = gt::hamiltonian(t, p, n);
    EXPECT_LT((gt::to_eigen(model.at(t)) - ref).cwiseAbs().maxCoeff(), 1e-6 * ref.cwiseAbs().maxCoeff());
  }
}

TEST(FullHamiltonian, ReducesToIdealWithoutUnwantedTerms) {
  const HilbertSpace s;
  auto p = ghz::default_params(Step::one);
  for (int j = 1; j <= 3; ++j)
    for (LevelPair pair : ghz::kLevelPairs)
      if (!ghz::is_wanted(Step::one, j, pair)) p.couplings.at(j, pair) = 0.0;
  p.couplings.crosstalk = {};
  for (double t : {0.0, 0.77e-9, 5e-9}) {
    EXPECT_EQ(ghz::full_step1_hamiltonian(t, p, s), ghz::ideal_step1_hamiltonian(t, p, s));
  }
}

TEST(FullHamiltonian, CrosstalkElement) {
  const HilbertSpace s;
  auto p = ghz::default_params(Step::one);
  p.couplings.crosstalk = {0.0, 0.02 * p.couplings.g_r, 0.0};
  const double t = 0.61e-9;
  const auto h = ghz::full_step1_hamiltonian(t, p, s);
  const double g13 = p.couplings.crosstalk[1];
  const double d13 = p.cavity_detuning(1, 3);
  const std::size_t n100 = s.index(Level::g, {1, 0, 0}), n001 = s.index(Level::g, {0, 0, 1});
  // g13 e^{i D13 t} a1 a3^dag moves the photon from cavity 1 to cavity 3.
  EXPECT_LT(std::abs(h(n001, n100) - g13 * std::exp(kI * d13 * t)), 1e-9 * g13);
  EXPECT_LT(std::abs(h(n100, n001) - g13 * std::exp(-kI * d13 * t)), 1e-9 * g13);
}

TEST(FullHamiltonian, ResonantStepTwoElement) {
  const HilbertSpace s;
  const auto p = ghz::default_params(Step::two);
  for (double t : {0.0, 0.9e-9}) {
    const auto h = ghz::full_step2_hamiltonian(t, p, s);
    EXPECT_EQ(h(s.index(Level::e, {0, 0, 0}), s.index(Level::g, {0, 0, 1})), Complex(p.couplings.g_r));
  }
}

TEST(FullHamiltonian, ResonantOnlyIsJaynesCummings) {
  const HilbertSpace s({1, 1, 2});
  auto p = ghz::default_params(Step::two);
  for (int j = 1; j <= 3; ++j)
    for (LevelPair pair : ghz::kLevelPairs)
      if (!ghz::is_wanted(Step::two, j, pair)) p.couplings.at(j, pair) = 0.0;
  const auto h = ghz::full_step2_hamiltonian(0.3e-9, p, s);
  for (std::size_t r = 0; r < s.dim(); ++r) {
    for (std::size_t c = 0; c < s.dim(); ++c) {
      if (h(r, c) == Complex(0.0)) continue;
      const auto lr = s.label(r), lc = s.label(c);
      // |e, n3> <-> |g, n3 + 1> with sqrt(n3 + 1) g_r.
      const bool down = lr.level == Level::e && lc.level == Level::g && lc.photons[2] == lr.photons[2] + 1;
      const bool up = lr.level == Level::g && lc.level == Level::e && lr.photons[2] == lc.photons[2] + 1;
      ASSERT_TRUE(down || up);
      EXPECT_EQ(lr.photons[0], lc.photons[0]);
      EXPECT_EQ(lr.photons[1], lc.photons[1]);
      const int n3 = std::max(lr.photons[2], lc.photons[2]);
      EXPECT_NEAR(std::abs(h(r, c)), std::sqrt(double(n3)) * p.couplings.g_r, 1e-3);
    }
  }
}

TEST(FullHamiltonian, HermitianAtManyTimes) {
  const HilbertSpace s;
  auto p1 = ghz::default_params(Step::one);
  auto p2 = ghz::default_params(Step::two);
  p1.couplings.crosstalk.fill(p1.couplings.g_r);
  p2.couplings.crosstalk.fill(p2.couplings.g_r);
  const auto m1 = ghz::full_step1_model(p1, s);
  const auto m2 = ghz::full_step2_model(p2, s);
  const auto mi = ghz::ideal_step1_model(p1, s);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1e-8);
  for (int k = 0; k < 100; ++k) {
    const double t = u(rng);
    EXPECT_LT(rel_herm(m1.at(t)), 1e-12);
    EXPECT_LT(rel_herm(m2.at(t)), 1e-12);
    EXPECT_LT(rel_herm(mi.at(t)), 1e-12);
  }
}

TEST(FullHamiltonian, StepMismatchRejected) {
  const HilbertSpace s({1, 1, 1});
  EXPECT_THROW(ghz::full_step1_model(ghz::default_params(Step::two), s), ghz::Error);
  EXPECT_THROW(ghz::full_step2_model(ghz::default_params(Step::one), s), ghz::Error);
}

TEST(HarmonicOperator, FrequencyAndNormBound) {
  const HilbertSpace s({1, 1, 1});
  const auto p = ghz::default_params(Step::one);
  const auto m = ghz::full_step1_model(p, s);
  EXPECT_NEAR(m.max_frequency(), kTwoPi * 14e9, 1e-3);
  for (double t : {0.0, 1e-10, 3e-9}) EXPECT_LE(ghz::spectral_norm(m.at(t)), m.norm_bound() * (1 + 1e-12));
  EXPECT_THROW(m.at(0.0) * ghz::OperatorMatrix(3, 3), ghz::Error);
  ghz::HarmonicOperator h(2);
  EXPECT_THROW(h.add(ghz::OperatorMatrix(3, 3), 1.0), ghz::Error);
}

}  // namespace
