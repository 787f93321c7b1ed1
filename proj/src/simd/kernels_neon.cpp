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

// AArch64 only; NEON is part of the base ISA there, so no runtime probe.

#include "kernels_impl.hpp"

#include <arm_neon.h>

#include <algorithm>

namespace ghz::simd::detail {
namespace {

// One complex double per 128-bit register: [re, im].

inline float64x2_t load1(const Complex* p) {
  return vld1q_f64(reinterpret_cast<const double*>(p));
}

inline void store1(Complex* p, float64x2_t v) {
  vst1q_f64(reinterpret_cast<double*>(p), v);
}

// alpha * x with alpha given as [ar, ar] and [-ai, ai].
inline float64x2_t cmul_broadcast(float64x2_t ar, float64x2_t ai_signed, float64x2_t x) {
  const float64x2_t swapped = vextq_f64(x, x, 1);
  return vfmaq_f64(vmulq_f64(ar, x), ai_signed, swapped);
}

inline void axpy_inline(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  const float64x2_t ar = vdupq_n_f64(alpha.real());
  const double ai_lanes[2] = {-alpha.imag(), alpha.imag()};
  const float64x2_t ai = vld1q_f64(ai_lanes);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    store1(y + i, vaddq_f64(load1(y + i), cmul_broadcast(ar, ai, load1(x + i))));
    store1(y + i + 1, vaddq_f64(load1(y + i + 1), cmul_broadcast(ar, ai, load1(x + i + 1))));
  }
  for (; i < n; ++i) store1(y + i, vaddq_f64(load1(y + i), cmul_broadcast(ar, ai, load1(x + i))));
}

void axpy(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  axpy_inline(n, alpha, x, y);
}

void weighted_add(std::size_t n, const double* w, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < n; ++i) {
    store1(y + i, vfmaq_f64(load1(y + i), vdupq_n_f64(w[i]), load1(x + i)));
  }
}

Complex dotc(std::size_t n, const Complex* x, const Complex* y) {
  float64x2_t same = vdupq_n_f64(0.0);
  float64x2_t cross = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = load1(x + i);
    const float64x2_t yv = load1(y + i);
    same = vfmaq_f64(same, xv, yv);
    cross = vfmaq_f64(cross, xv, vextq_f64(yv, yv, 1));
  }
  const double re = vgetq_lane_f64(same, 0) + vgetq_lane_f64(same, 1);
  const double im = vgetq_lane_f64(cross, 0) - vgetq_lane_f64(cross, 1);
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

const KernelTable& neon_table() {
  static const KernelTable table{Isa::neon, &axpy, &weighted_add, &dotc, &gemm, &csr_gemm};
  return table;
}

}  // namespace ghz::simd::detail
