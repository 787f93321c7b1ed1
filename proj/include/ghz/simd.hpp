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

// Runtime-dispatched numeric kernels for the propagator's inner loops.
//
// Every kernel has a portable scalar reference; vector variants (AVX2+FMA on
// x86-64, NEON on AArch64) must agree with it to rounding. The active table is
// chosen once from CPU features, or from GHZSIM_SIMD=scalar|avx2|neon|auto.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace ghz {
using Complex = std::complex<double>;
}

namespace ghz::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;

  // y[i] += alpha * x[i]
  void (*axpy)(std::size_t n, Complex alpha, const Complex* x, Complex* y);

  // y[i] += w[i] * x[i], real weights
  void (*weighted_add)(std::size_t n, const double* w, const Complex* x, Complex* y);

  // sum_i conj(x[i]) * y[i]
  Complex (*dotc)(std::size_t n, const Complex* x, const Complex* y);

  // c = a * b for row-major a (m x k), b (k x n); c is overwritten.
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const Complex* a,
               const Complex* b, Complex* c);

  // c = S * b where S is CSR with `rows` rows and b is row-major with n
  // columns; c (rows x n) is overwritten.
  void (*csr_gemm)(std::size_t rows, std::size_t n, const std::uint32_t* row_ptr,
                   const std::uint32_t* cols, const Complex* vals, const Complex* b,
                   Complex* c);
};

std::string_view isa_name(Isa isa);
Isa parse_isa(std::string_view name);  // throws ghz::Error on unknown names

bool isa_supported(Isa isa);
std::vector<Isa> supported_isas();

// Table for a specific ISA; throws if the CPU or the build lacks it.
const KernelTable& kernels_for(Isa isa);

// Currently selected table.
const KernelTable& kernels();
Isa active_isa();
void set_active_isa(Isa isa);

}  // namespace ghz::simd
