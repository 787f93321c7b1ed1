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

#include "ghz/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "ghz/error.hpp"

namespace ghz {

CsrMatrix CsrMatrix::from_dense(const ComplexMatrix& dense, double drop_below) {
  CsrMatrix m;
  m.rows_ = dense.rows();
  m.cols_ = dense.cols();
  m.row_ptr_.reserve(m.rows_ + 1);
  m.row_ptr_.push_back(0);
  for (std::size_t r = 0; r < dense.rows(); ++r) {
    for (std::size_t c = 0; c < dense.cols(); ++c) {
      if (std::abs(dense(r, c)) > drop_below) {
        m.cols_idx_.push_back(static_cast<std::uint32_t>(c));
        m.values_.push_back(dense(r, c));
      }
    }
    m.row_ptr_.push_back(static_cast<std::uint32_t>(m.cols_idx_.size()));
  }
  return m;
}

void CsrMatrix::multiply(const ComplexMatrix& b, ComplexMatrix& out) const {
  require(b.rows() == cols_, ErrorKind::shape, "sparse product: inner dimensions differ");
  if (out.rows() != rows_ || out.cols() != b.cols()) out = ComplexMatrix(rows_, b.cols());
  simd::kernels().csr_gemm(rows_, b.cols(), row_ptr_.data(), cols_idx_.data(), values_.data(),
                           b.data(), out.data());
}

void CsrMatrix::multiply(std::span<const Complex> x, std::span<Complex> y) const {
  require(x.size() == cols_ && y.size() == rows_, ErrorKind::shape,
          "sparse matrix-vector product: dimension mismatch");
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex acc{};
    for (std::uint32_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += values_[p] * x[cols_idx_[p]];
    y[r] = acc;
  }
}

ComplexMatrix CsrMatrix::to_dense() const {
  ComplexMatrix d(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::uint32_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) d(r, cols_idx_[p]) = values_[p];
  }
  return d;
}

HarmonicCsr::HarmonicCsr(std::span<const HarmonicTerm> terms, std::size_t dim) {
  // (row, col) -> contributions; std::map keeps the slots in CSR order.
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::pair<std::uint32_t, Complex>>>
      slots;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& op = terms[k].op;
    require(op.rows() == dim && op.cols() == dim, ErrorKind::shape,
            "harmonic term dimension does not match the operator dimension");
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        if (op(r, c) == Complex{}) continue;
        slots[{static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c)}].emplace_back(
            static_cast<std::uint32_t>(k), op(r, c));
      }
    }
    omegas_.push_back(terms[k].omega);
  }

  pattern_.rows_ = dim;
  pattern_.cols_ = dim;
  pattern_.row_ptr_.assign(dim + 1, 0);
  slot_begin_.push_back(0);
  for (const auto& [rc, contribs] : slots) {
    pattern_.row_ptr_[rc.first + 1]++;
    pattern_.cols_idx_.push_back(rc.second);
    for (const auto& [term, coeff] : contribs) {
      contrib_term_.push_back(term);
      contrib_coeff_.push_back(coeff);
    }
    slot_begin_.push_back(static_cast<std::uint32_t>(contrib_term_.size()));
  }
  for (std::size_t r = 0; r < dim; ++r) pattern_.row_ptr_[r + 1] += pattern_.row_ptr_[r];
  pattern_.values_.assign(pattern_.cols_idx_.size(), Complex{});
}

void HarmonicCsr::evaluate(double t, CsrMatrix& out) const {
  require(out.nnz() == pattern_.nnz() && out.rows() == pattern_.rows(), ErrorKind::shape,
          "evaluate() target does not share the harmonic pattern");
  std::vector<Complex> phases(omegas_.size());
  for (std::size_t k = 0; k < omegas_.size(); ++k) phases[k] = std::polar(1.0, omegas_[k] * t);
  for (std::size_t s = 0; s + 1 < slot_begin_.size(); ++s) {
    Complex v{};
    for (std::uint32_t p = slot_begin_[s]; p < slot_begin_[s + 1]; ++p) {
      v += contrib_coeff_[p] * phases[contrib_term_[p]];
    }
    out.values_[s] = v;
  }
}

}  // namespace ghz
