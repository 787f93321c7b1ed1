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

// Brute-force reference propagation through the vectorized Liouvillian.
// Column-stacked convention: vec(A rho B) = (B^T kron A) vec(rho).

#include <cstddef>

#include "ghz/dynamics.hpp"
#include "ghz/hamiltonian.hpp"
#include "ghz/hilbert.hpp"
#include "ghz/linalg.hpp"

namespace ghz {

inline constexpr std::size_t kOracleMaxSuperDim = 4096;

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const ComplexVector& v, std::size_t dim);

// Liouvillian of a time-independent H plus the noise dissipators.
ComplexMatrix liouvillian(const OperatorMatrix& h, const NoiseModel& noise,
                          const HilbertSpace& space);

// exp(L * duration). Refused (ErrorKind::oracle_refused) when dim^2 > 4096.
ComplexMatrix liouvillian_expm(const OperatorMatrix& h, const NoiseModel& noise,
                               const HilbertSpace& space, double duration);

// exp(L * duration) v by a scaled Taylor series, without forming exp(L).
ComplexVector expm_action(const ComplexMatrix& l, const ComplexVector& v, double duration);

struct OracleComparison {
  double trace_distance = 0.0;
  ComplexMatrix master;  // evolve_master result
  ComplexMatrix oracle;  // Liouvillian propagation
};

// Freezes h at each slice midpoint and propagates the same piecewise-constant
// generator with evolve_master and with the Liouvillian exponential.
OracleComparison piecewise_oracle_check(const HarmonicOperator& h, const NoiseModel& noise,
                                        const HilbertSpace& space, const DensityMatrix& rho0,
                                        double duration, std::size_t slices,
                                        const IntegratorConfig& cfg);

}  // namespace ghz
