// Copyright 2026 The hadamard-sim Authors
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

#ifndef HADAMARD_PERMANENT_HPP_
#define HADAMARD_PERMANENT_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hadamard/complex_matrix.hpp"

namespace hadamard {

// Largest order accepted by permanent(). Ryser costs O(2^n n).
inline constexpr std::size_t kMaxPermanentOrder = 30;

/// Permanent of a square matrix by Ryser's inclusion-exclusion formula.
///
/// Column subsets are visited in binary-reflected Gray-code order so each step
/// adds or removes exactly one column from the running row sums:
///
///   perm(A) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} a_ij
///
/// The 0x0 matrix has permanent 1.
inline Complex permanent(const ComplexMatrix& m) {
  if (m.empty()) return {1.0, 0.0};
  if (!m.is_square()) throw ShapeError("permanent: matrix must be square");
  const std::size_t n = m.rows();
  if (n > kMaxPermanentOrder) {
    throw SizeError("permanent: order " + std::to_string(n) + " exceeds cap of " +
                    std::to_string(kMaxPermanentOrder));
  }
  if (n == 1) return m(0, 0);

  std::vector<Complex> row_sums(n);
  Complex total{};
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const auto j = static_cast<std::size_t>(std::countr_zero(k));
    const std::uint64_t bit = std::uint64_t{1} << j;
    gray ^= bit;
    if (gray & bit) {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += m(i, j);
    } else {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] -= m(i, j);
    }
    Complex prod = row_sums[0];
    for (std::size_t i = 1; i < n; ++i) prod *= row_sums[i];
    // Sign (-1)^{n - |S|}.
    if ((n - static_cast<std::size_t>(std::popcount(gray))) & 1U) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return total;
}

/// Repeats row i of `m` row_multiplicities[i] times and column j
/// col_multiplicities[j] times, keeping order. This is U_{S,T} in the bosonic
/// transition amplitude perm(U_{S,T}).
inline ComplexMatrix submatrix_with_repetition(const ComplexMatrix& m,
                                               const std::vector<int>& row_multiplicities,
                                               const std::vector<int>& col_multiplicities) {
  if (row_multiplicities.size() != m.rows() || col_multiplicities.size() != m.cols()) {
    throw ShapeError("submatrix_with_repetition: multiplicity vectors do not match matrix shape");
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < row_multiplicities.size(); ++i) {
    if (row_multiplicities[i] < 0) throw ShapeError("submatrix_with_repetition: negative multiplicity");
    rows.insert(rows.end(), static_cast<std::size_t>(row_multiplicities[i]), i);
  }
  for (std::size_t j = 0; j < col_multiplicities.size(); ++j) {
    if (col_multiplicities[j] < 0) throw ShapeError("submatrix_with_repetition: negative multiplicity");
    cols.insert(cols.end(), static_cast<std::size_t>(col_multiplicities[j]), j);
  }
  if (rows.size() != cols.size()) {
    throw ShapeError("submatrix_with_repetition: row and column totals differ");
  }
  return m.select(rows, cols);
}

}  // namespace hadamard

#endif  // HADAMARD_PERMANENT_HPP_
