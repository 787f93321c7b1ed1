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

#include "ghz/error.hpp"
#include "ghz/oracle.hpp"
#include "support.hpp"

namespace {

using ghz::ComplexMatrix;
using ghz::DensityMatrix;
using ghz::HilbertSpace;
using ghz::Level;
using ghz::LevelPair;
using ghz::NoiseModel;
using ghz::Step;
namespace gt = ghz::testing;

NoiseModel busy_noise() {
  NoiseModel n;
  n.kappa = {2e6, 1e6, 3e6};
  n.gamma_relax = {4e6, 5e6, 6e5};
  n.gamma_phi = {1e7, 7e6, 3e6};
  return n;
}

TEST(Oracle, VectorizeIsColumnStacked) {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(1, 0) = 2.0;
  m(0, 1) = 3.0;
  m(1, 1) = 4.0;
  const auto v = ghz::vectorize(m);
  EXPECT_EQ(v[1], ghz::Complex(2.0));
  EXPECT_EQ(v[2], ghz::Complex(3.0));
  EXPECT_EQ(ghz::unvectorize(v, 2), m);
  EXPECT_THROW(ghz::unvectorize(v, 3), ghz::Error);
}

TEST(Oracle, ZeroGeneratorGivesIdentity) {
  const HilbertSpace s({1, 1, 1});
  const auto e = ghz::liouvillian_expm(ComplexMatrix(s.dim(), s.dim()), NoiseModel::none(Step::one), s, 1e-6);
  EXPECT_LT(ghz::max_abs_diff(e, ComplexMatrix::identity(s.dim() * s.dim())), 1e-15);
}

TEST(Oracle, QutritDecayRate) {
  const HilbertSpace s({1, 1, 1});
  NoiseModel noise = NoiseModel::none(Step::one);
  noise.gamma_relax[static_cast<int>(LevelPair::eg)] = 1e4;
  const auto rho0 = DensityMatrix::from_state(ghz::basis_state(Level::e, {0, 0, 0}, s));
  const double t = 3e-5;
  const auto e = ghz::liouvillian_expm(ComplexMatrix(s.dim(), s.dim()), noise, s, t);
  const auto rho = ghz::unvectorize(e * ghz::vectorize(rho0.matrix()), s.dim());
  EXPECT_NEAR(rho(s.index(Level::e, {0, 0, 0}), s.index(Level::e, {0, 0, 0})).real(), std::exp(-0.3), 1e-9);
}

TEST(Oracle, LiouvillianMatchesReference) {
  const ghz::PhotonNumbers n{1, 2, 1};
  const HilbertSpace s(n);
  const auto p = ghz::default_params(Step::one);
  const double t = 0.41e-9;
  const auto h = ghz::full_step1_hamiltonian(t, p, s);
  const auto l = ghz::liouvillian(h, busy_noise(), s);
  const gt::Mat rho = gt::random_density(s.dim(), 17);
  const auto lv = ghz::unvectorize(l * ghz::vectorize(gt::from_eigen(rho)), s.dim());
  const gt::Mat ref = gt::lindblad(rho, gt::to_eigen(h), busy_noise(), n);
  EXPECT_LT((gt::to_eigen(lv) - ref).cwiseAbs().maxCoeff(), 1e-9 * ref.cwiseAbs().maxCoeff());
}

TEST(Oracle, ExpmActionMatchesFullExponential) {
  const HilbertSpace s({1, 1, 1});
  const auto h = ghz::full_step1_hamiltonian(0.2e-9, ghz::default_params(Step::one), s);
  const auto noise = busy_noise();
  const auto l = ghz::liouvillian(h, noise, s);
  const auto v = ghz::vectorize(gt::from_eigen(gt::random_density(s.dim(), 5)));
  for (double t : {1e-11, 2e-10, 1.5e-9}) {
    const auto full = ghz::liouvillian_expm(h, noise, s, t) * v;
    const auto act = ghz::expm_action(l, v, t);
    double err = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) err = std::max(err, std::abs(full[i] - act[i]));
    EXPECT_LT(err, 1e-10);
  }
  EXPECT_THROW(ghz::expm_action(l, v, -1.0), ghz::Error);
}

TEST(Oracle, RefusesLargeSystems) {
  const HilbertSpace s;
  try {
    ghz::liouvillian_expm(ComplexMatrix(s.dim(), s.dim()), NoiseModel::none(Step::one), s, 1e-9);
    FAIL() << "expected refusal";
  } catch (const ghz::Error& e) {
    EXPECT_EQ(e.kind(), ghz::ErrorKind::oracle_refused);
  }
}

TEST(Oracle, PiecewiseAgreesWithIntegrator) {
  const HilbertSpace s({1, 1, 1});
  const auto p = ghz::default_params(Step::one);
  const auto rho0 = DensityMatrix::from_state(ghz::basis_state(Level::e, {0, 1, 0}, s));
  const auto r = ghz::piecewise_oracle_check(ghz::full_step1_model(p, s), ghz::default_noise(Step::one),
                                             s, rho0, 2e-9, 16, {});
  EXPECT_LT(r.trace_distance, 1e-6);
  EXPECT_NEAR(r.oracle.trace().real(), 1.0, 1e-10);
  EXPECT_EQ(r.master.rows(), s.dim());
}

}  // namespace
