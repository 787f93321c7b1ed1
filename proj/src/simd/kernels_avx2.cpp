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

// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>

namespace ghz::simd::detail {
namespace {

// Two complex doubles per 256-bit register: [re0, im0, re1, im1].

inline __m256d load2(const Complex* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

inline void store2(Complex* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

// (ar + i ai) * x for both lanes of x.
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d x) {
  const __m256d swapped = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, swapped));
}

inline void axpy_inline(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d y0 = _mm256_add_pd(load2(y + i), cmul_broadcast(ar, ai, load2(x + i)));
    const __m256d y1 =
        _mm256_add_pd(load2(y + i + 2), cmul_broadcast(ar, ai, load2(x + i + 2)));
    store2(y + i, y0);
    store2(y + i + 2, y1);
  }
  for (; i + 2 <= n; i += 2) {
    store2(y + i, _mm256_add_pd(load2(y + i), cmul_broadcast(ar, ai, load2(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void axpy(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  axpy_inline(n, alpha, x, y);
}

void weighted_add(std::size_t n, const double* w, const Complex* x, Complex* y) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d w2 = _mm_loadu_pd(w + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0b01010000);
    store2(y + i, _mm256_fmadd_pd(ww, load2(x + i), load2(y + i)));
  }
  for (; i < n; ++i) y[i] += w[i] * x[i];
}

Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  // same[k] accumulates x*y lane-wise, cross[k] accumulates x*swap(y).
  __m256d same = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), cross);
  }
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(c, cross);
  double re = (s[0] + s[2]) + (s[1] + s[3]);
  double im = (c[0] + c[2]) - (c[1] + c[3]);
  for (; i < n; ++i) {
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
      axpy_inline(n, alpha, b + p * n, crow);
    }
  }
}

void csr_gemm(std::size_t rows, std::size_t n, const std::uint32_t* row_ptr,
              const std::uint32_t* cols, const Complex* vals, const Complex* b, Complex* c) {
  for (std::size_t i = 0; i < rows; ++i) {
    Complex* crow = c + i * n;
    std::fill(crow, crow + n, Complex{});
    for (std::uint32_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      axpy_inline(n, vals[p], b + std::size_t{cols[p]} * n, crow);
    }
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{Isa::avx2, &axpy, &weighted_add, &dotc, &gemm, &csr_gemm};
  return table;
}

}  // namespace ghz::simd::detail
