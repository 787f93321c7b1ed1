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

// Reference constructions for tests, built directly with Eigen so they share
// no code with the library's operator and propagation paths.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "ghz/dynamics.hpp"
#include "ghz/hamiltonian.hpp"
#include "ghz/linalg.hpp"

namespace ghz::testing {

using Mat = Eigen::MatrixXcd;

inline Mat to_eigen(const ComplexMatrix& m) {
  Mat out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

inline ComplexMatrix from_eigen(const Mat& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

inline Mat destroy(int n_max) {
  Mat a = Mat::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

// |to><from| on the qutrit, levels g = 0, e = 1, f = 2.
inline Mat ket_bra(int to, int from) {
  Mat m = Mat::Zero(3, 3);
  m(to, from) = 1.0;
  return m;
}

// factors = {qutrit, cavity 1, cavity 2, cavity 3}
inline Mat tensor(const std::array<Mat, 4>& f) {
  Mat a = Eigen::kroneckerProduct(f[0], f[1]).eval();
  Mat b = Eigen::kroneckerProduct(a, f[2]).eval();
  return Eigen::kroneckerProduct(b, f[3]).eval();
}

inline std::array<Mat, 4> identities(const PhotonNumbers& n) {
  return {Mat::Identity(3, 3), Mat::Identity(n[0] + 1, n[0] + 1),
          Mat::Identity(n[1] + 1, n[1] + 1), Mat::Identity(n[2] + 1, n[2] + 1)};
}

inline Mat on_qutrit(const Mat& op, const PhotonNumbers& n) {
  auto f = identities(n);
  f[0] = op;
  return tensor(f);
}

inline Mat on_cavity(int j, const Mat& op, const PhotonNumbers& n) {
  auto f = identities(n);
  f[j] = op;
  return tensor(f);
}

inline int upper_of(int pair) { return pair == 2 ? 1 : 2; }  // fe, fg, eg
inline int lower_of(int pair) { return pair == 0 ? 1 : 0; }

// Interaction Hamiltonian written out term by term from the coupling tables.
inline Mat hamiltonian(double t, const StepParams& p, const PhotonNumbers& n) {
  const std::complex<double> i(0, 1);
  Mat h = Mat::Zero(tensor(identities(n)).rows(), tensor(identities(n)).cols());
  for (int j = 1; j <= 3; ++j) {
    const Mat a = on_cavity(j, destroy(n[j - 1]), n);
    for (int pair = 0; pair < 3; ++pair) {
      const auto lp = static_cast<LevelPair>(pair);
      const double g = p.couplings.at(j, lp);
      if (g == 0.0) continue;
      double omega = p.detuning(j, lp);
      if (is_wanted(p.step, j, lp)) omega = p.step == Step::one ? p.delta() : 0.0;
      const Mat term = g * std::exp(i * omega * t) * (a * on_qutrit(ket_bra(upper_of(pair), lower_of(pair)), n));
      h += term + term.adjoint();
    }
  }
  const int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
  for (int k = 0; k < 3; ++k) {
    const double g = p.couplings.crosstalk[k];
    if (g == 0.0) continue;
    const int a = pairs[k][0], b = pairs[k][1];
    const double omega = p.cavities.omega[b - 1] - p.cavities.omega[a - 1];
    const Mat term = g * std::exp(i * omega * t) *
                     (on_cavity(a, destroy(n[a - 1]), n) * on_cavity(b, destroy(n[b - 1]), n).adjoint());
    h += term + term.adjoint();
  }
  return h;
}

inline Mat dissipate(const Mat& l, const Mat& rho) {
  const Mat ldl = l.adjoint() * l;
  return l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
}

inline Mat sz(int pair, const PhotonNumbers& n) {
  return on_qutrit(ket_bra(upper_of(pair), upper_of(pair)) - ket_bra(lower_of(pair), lower_of(pair)), n);
}

inline Mat lindblad(const Mat& rho, const Mat& h, const NoiseModel& noise, const PhotonNumbers& n) {
  const std::complex<double> i(0, 1);
  Mat out = -i * (h * rho - rho * h);
  for (int j = 1; j <= 3; ++j) out += noise.kappa[j - 1] * dissipate(on_cavity(j, destroy(n[j - 1]), n), rho);
  for (int pair = 0; pair < 3; ++pair) {
    out += noise.gamma_phi[pair] * dissipate(sz(pair, n), rho);
    out += noise.gamma_relax[pair] *
           dissipate(on_qutrit(ket_bra(lower_of(pair), upper_of(pair)), n), rho);
  }
  return out;
}

inline double trace_norm_distance(const Mat& a, const Mat& b) {
  const Mat d = 0.5 * ((a - b) + (a - b).adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(d);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

// Random density matrix W W^dagger / Tr, fixed seed.
inline Mat random_density(Eigen::Index dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Mat w(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) w(r, c) = {nd(rng), nd(rng)};
  Mat rho = w * w.adjoint();
  return rho / rho.trace();
}

inline Mat random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = {u(rng), u(rng)};
  return m;
}

}  // namespace ghz::testing
