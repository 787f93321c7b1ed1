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

#include "kernels_impl.hpp"

#include <algorithm>

namespace ghz::simd::detail {
namespace {

void axpy(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void weighted_add(std::size_t n, const double* w, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += w[i] * x[i];
}

Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void gemm(std::size_t m, std::size_t n, std::size_t k, const Complex* a, const Complex* b,
          Complex* c) {
  std::fill(c, c + m * n, Complex{});
  for (std::size_t i = 0; i < m; ++i) {
    Complex* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const Complex alpha = a[i * k + p];
      if (alpha == Complex{}) continue;
      axpy(n, alpha, b + p * n, crow);
    }
  }
}

void csr_gemm(std::size_t rows, std::size_t n, const std::uint32_t* row_ptr,
              const std::uint32_t* cols, const Complex* vals, const Complex* b, Complex* c) {
  for (std::size_t i = 0; i < rows; ++i) {
    Complex* crow = c + i * n;
    std::fill(crow, crow + n, Complex{});
    for (std::uint32_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      axpy(n, vals[p], b + std::size_t{cols[p]} * n, crow);
    }
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::scalar, &axpy, &weighted_add, &dotc, &gemm, &csr_gemm};
  return table;
}

}  // namespace ghz::simd::detail
