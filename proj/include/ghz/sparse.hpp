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

// Compressed-row complex matrices used inside the propagator. Operators are
// built and exchanged dense; these only carry the hot-loop representation.

#include <cstdint>
#include <span>
#include <vector>

#include "ghz/linalg.hpp"

namespace ghz {

class CsrMatrix {
 public:
  CsrMatrix() = default;

  // Keeps entries with |value| > drop_below.
  static CsrMatrix from_dense(const ComplexMatrix& dense, double drop_below = 0.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return cols_idx_.size(); }

  std::span<const std::uint32_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::uint32_t> col_index() const noexcept { return cols_idx_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }

  // out = this * b, b row-major dense.
  void multiply(const ComplexMatrix& b, ComplexMatrix& out) const;
  void multiply(std::span<const Complex> x, std::span<Complex> y) const;

  ComplexMatrix to_dense() const;

 private:
  friend class HarmonicCsr;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> row_ptr_;
  std::vector<std::uint32_t> cols_idx_;
  std::vector<Complex> values_;
};

struct HarmonicTerm {
  ComplexMatrix op;
  double omega = 0.0;  // term contributes op * exp(i * omega * t)
};

// Sum of harmonic terms on the union sparsity pattern; evaluate() only
// rewrites the values array, so the pattern is reused every time step.
class HarmonicCsr {
 public:
  HarmonicCsr(std::span<const HarmonicTerm> terms, std::size_t dim);

  std::size_t dim() const noexcept { return pattern_.rows(); }
  std::size_t nnz() const noexcept { return pattern_.nnz(); }

  // Matrix with the union pattern and zero values, for use with evaluate().
  const CsrMatrix& pattern() const noexcept { return pattern_; }

  void evaluate(double t, CsrMatrix& out) const;

 private:
  CsrMatrix pattern_;
  std::vector<double> omegas_;
  std::vector<std::uint32_t> slot_begin_;
  std::vector<std::uint32_t> contrib_term_;
  std::vector<Complex> contrib_coeff_;
};

}  // namespace ghz
