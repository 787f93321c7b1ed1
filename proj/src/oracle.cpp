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

#include "ghz/oracle.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>
#include <string>

#include "ghz/error.hpp"

namespace ghz {
namespace {

// D[L] = conj(L) kron L - (I kron L^dag L + (L^dag L)^T kron I) / 2
void add_dissipator(ComplexMatrix& out, double rate, const OperatorMatrix& l) {
  if (rate == 0.0) return;
  const std::size_t n = l.rows();
  const OperatorMatrix ident = OperatorMatrix::identity(n);
  const OperatorMatrix ldl = l.adjoint() * l;
  OperatorMatrix lconj = l;
  for (Complex& v : lconj.values()) v = std::conj(v);
  ComplexMatrix term = kron(lconj, l);
  ComplexMatrix anti = kron(ident, ldl) + kron(ldl.transpose(), ident);
  anti *= Complex(0.5);
  term -= anti;
  term *= Complex(rate);
  out += term;
}

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) s += std::abs(a(r, c));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

ComplexVector vectorize(const ComplexMatrix& rho) {
  const std::size_t n = rho.rows();
  ComplexVector v(n * rho.cols());
  for (std::size_t c = 0; c < rho.cols(); ++c) {
    for (std::size_t r = 0; r < n; ++r) v[c * n + r] = rho(r, c);
  }
  return v;
}

ComplexMatrix unvectorize(const ComplexVector& v, std::size_t dim) {
  require(v.size() == dim * dim, ErrorKind::shape, "vector length is not dim^2");
  ComplexMatrix rho(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) rho(r, c) = v[c * dim + r];
  }
  return rho;
}

ComplexMatrix liouvillian(const OperatorMatrix& h, const NoiseModel& noise,
                          const HilbertSpace& space) {
  const std::size_t n = space.dim();
  require(h.rows() == n && h.cols() == n, ErrorKind::shape, "Hamiltonian dimension mismatch");
  noise.validate();
  const OperatorMatrix ident = OperatorMatrix::identity(n);

  // -i (I kron H - H^T kron I)
  ComplexMatrix l = kron(ident, h) - kron(h.transpose(), ident);
  l *= Complex(0.0, -1.0);

  for (int j = 1; j <= 3; ++j) {
    add_dissipator(l, noise.kappa[j - 1],
                   lift(annihilation(space.fock_cutoffs()[j - 1]), cavity_slot(j), space));
  }
  for (LevelPair pair : kLevelPairs) {
    add_dissipator(l, noise.dephase(pair), lift(sz_operator(pair), Slot::qutrit, space));
    add_dissipator(l, noise.relax(pair), lift(lowering(pair), Slot::qutrit, space));
  }
  return l;
}

ComplexMatrix liouvillian_expm(const OperatorMatrix& h, const NoiseModel& noise,
                               const HilbertSpace& space, double duration) {
  const std::size_t n2 = space.dim() * space.dim();
  require(n2 <= kOracleMaxSuperDim, ErrorKind::oracle_refused,
          "Liouvillian of size " + std::to_string(n2) + " exceeds the oracle limit of " +
              std::to_string(kOracleMaxSuperDim));
  require(std::isfinite(duration) && duration >= 0.0, ErrorKind::invalid_argument,
          "duration must be finite and non-negative");
  const ComplexMatrix l = liouvillian(h, noise, space);

  Eigen::MatrixXcd lt(n2, n2);
  for (std::size_t r = 0; r < n2; ++r) {
    for (std::size_t c = 0; c < n2; ++c) lt(r, c) = l(r, c) * duration;
  }
  const Eigen::MatrixXcd e = lt.exp();
  ComplexMatrix out(n2, n2);
  for (std::size_t r = 0; r < n2; ++r) {
    for (std::size_t c = 0; c < n2; ++c) out(r, c) = e(r, c);
  }
  return out;
}

ComplexVector expm_action(const ComplexMatrix& l, const ComplexVector& v, double duration) {
  require(l.is_square() && l.rows() == v.size(), ErrorKind::shape,
          "generator and vector sizes differ");
  require(std::isfinite(duration) && duration >= 0.0, ErrorKind::invalid_argument,
          "duration must be finite and non-negative");
  const double scaled = one_norm(l) * duration;
  const auto substeps = static_cast<std::size_t>(std::max(1.0, std::ceil(scaled / 0.5)));
  const double h = duration / static_cast<double>(substeps);

  ComplexVector x = v;
  for (std::size_t s = 0; s < substeps; ++s) {
    ComplexVector term = x;
    ComplexVector sum = x;
    for (int k = 1; k <= 60; ++k) {
      term = l * term;
      for (Complex& t : term) t *= h / k;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
      if (norm(term) <= 1e-18 * norm(sum)) break;
    }
    x = std::move(sum);
  }
  return x;
}

OracleComparison piecewise_oracle_check(const HarmonicOperator& h, const NoiseModel& noise,
                                        const HilbertSpace& space, const DensityMatrix& rho0,
                                        double duration, std::size_t slices,
                                        const IntegratorConfig& cfg) {
  const std::size_t n = space.dim();
  require(n * n <= kOracleMaxSuperDim, ErrorKind::oracle_refused,
          "state space too large for the Liouvillian oracle");
  require(slices >= 1, ErrorKind::invalid_argument, "slices must be at least 1");
  require(std::isfinite(duration) && duration > 0.0, ErrorKind::invalid_argument,
          "duration must be positive");

  // Frozen slices have no harmonic frequencies; keep the step the full model would get.
  IntegratorConfig frozen_cfg = cfg;
  frozen_cfg.max_frequency_hint = std::max(cfg.max_frequency_hint, generator_frequency(h, noise));

  const double width = duration / static_cast<double>(slices);
  DensityMatrix rho = rho0;
  ComplexVector vec = vectorize(rho0.matrix());
  for (std::size_t k = 0; k < slices; ++k) {
    const OperatorMatrix frozen = h.at((static_cast<double>(k) + 0.5) * width);
    rho = evolve_master(rho, HarmonicOperator::constant(frozen), noise, space, width, frozen_cfg);
    vec = expm_action(liouvillian(frozen, noise, space), vec, width);
  }

  OracleComparison out;
  out.master = rho.matrix();
  out.oracle = unvectorize(vec, n);
  out.trace_distance = trace_distance(out.master, out.oracle);
  return out;
}

}  // namespace ghz
