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

#ifndef HADAMARD_COMPLEX_MATRIX_HPP_
#define HADAMARD_COMPLEX_MATRIX_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iomanip>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/errors.hpp"

namespace hadamard {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Absolute entrywise tolerance. Every check in the library defaults to 1e-9.
struct Tolerance {
  double eps = 1e-9;

  constexpr Tolerance() = default;
  constexpr explicit Tolerance(double e) : eps(e) {
    if (!(e >= 0.0)) throw DomainError("tolerance must be nonnegative");
  }
};

inline constexpr Tolerance kDefaultTolerance{};

// Dense row-major complex matrix. Small by intent: the largest matrices in
// this library are permanent inputs (n <= 30) and Reck meshes.
class ComplexMatrix {
 public:
  // 0x0 matrix; only produced by submatrix extraction with empty selections.
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
      throw ShapeError("matrix dimensions must be >= 1");
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    if (rows_ == 0) throw ShapeError("matrix must have at least one row");
    cols_ = rows.begin()->size();
    if (cols_ == 0) throw ShapeError("matrix must have at least one column");
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ShapeError("ragged matrix rows");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw DomainError("matrix entries must be finite");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  const std::vector<Complex>& data() const { return data_; }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product: inner dimensions differ");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ShapeError("matrix difference: shapes differ");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  // Rows and columns picked by index, in the order given.
  ComplexMatrix select(const std::vector<std::size_t>& row_idx,
                       const std::vector<std::size_t>& col_idx) const {
    if (row_idx.empty() || col_idx.empty()) return ComplexMatrix{};
    ComplexMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j) {
        if (row_idx[i] >= rows_ || col_idx[j] >= cols_) throw ShapeError("select: index out of range");
        out(i, j) = (*this)(row_idx[i], col_idx[j]);
      }
    return out;
  }

  // Row-major `re+imi` pairs, comma separated within a row, one row per line.
  std::string to_string(int precision = 6) const {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision);
    // Values that would print as zero are printed without a sign.
    const double zero_below = 0.5 * std::pow(10.0, -precision);
    auto clean = [&](double v) { return std::abs(v) < zero_below ? 0.0 : v; };
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) {
        const Complex z = (*this)(r, c);
        const double re = clean(z.real());
        const double im = clean(z.imag());
        if (c) os << ", ";
        os << re << (std::signbit(im) ? "-" : "+") << std::abs(im) << 'i';
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("max_abs_diff: shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

// Unit-modulus phase of z, or 1 when z is zero.
inline Complex unit_phase(Complex z) {
  const double r = std::abs(z);
  return r == 0.0 ? Complex{1.0, 0.0} : z / r;
}

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

inline bool is_unitary(const ComplexMatrix& m, Tolerance tol = kDefaultTolerance) {
  if (!m.is_square() || m.empty()) throw ShapeError("is_unitary: matrix must be square");
  const ComplexMatrix g = m.adjoint() * m;
  return max_abs_diff(g, ComplexMatrix::identity(m.rows())) <= tol.eps;
}

// True iff A = c·B for some unimodular c. c is read off the largest-magnitude
// entry of B.
inline bool equal_up_to_global_phase(const ComplexMatrix& a, const ComplexMatrix& b,
                                     Tolerance tol = kDefaultTolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("equal_up_to_global_phase: shapes differ");
  if (a.empty()) return true;
  const auto& bd = b.data();
  const auto k = static_cast<std::size_t>(
      std::max_element(bd.begin(), bd.end(),
                       [](Complex x, Complex y) { return std::abs(x) < std::abs(y); }) -
      bd.begin());
  const Complex c = bd[k] == Complex{} ? Complex{1.0, 0.0} : unit_phase(a.data()[k] / bd[k]);
  return max_abs_diff(a, c * b) <= tol.eps;
}

// True iff A = D1·B·D2 for diagonal unimodular D1, D2.
//
// Zero patterns (|entry| <= eps) must agree. Row and column phases are then
// propagated from one anchor per connected component of the nonzero pattern:
// each nonzero entry fixes d1[i]·d2[j] = A_ij / B_ij. For matrices without
// zeros this is the first-row / first-column normalization. The candidate is
// verified entrywise at the end.
inline bool equal_up_to_diagonal_phases(const ComplexMatrix& a, const ComplexMatrix& b,
                                        Tolerance tol = kDefaultTolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("equal_up_to_diagonal_phases: shapes differ");
  const std::size_t n = a.rows(), m = a.cols();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if ((std::abs(a(i, j)) > tol.eps) != (std::abs(b(i, j)) > tol.eps)) return false;

  std::vector<Complex> d1(n), d2(m);
  std::vector<bool> row_set(n, false), col_set(m, false);
  // Nodes 0..n-1 are rows, n..n+m-1 are columns.
  for (std::size_t start = 0; start < n + m; ++start) {
    const bool is_row = start < n;
    if (is_row ? row_set[start] : col_set[start - n]) continue;
    if (is_row) {
      d1[start] = 1.0;
      row_set[start] = true;
    } else {
      d2[start - n] = 1.0;
      col_set[start - n] = true;
    }
    std::queue<std::size_t> q;
    q.push(start);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      if (v < n) {
        for (std::size_t j = 0; j < m; ++j) {
          if (col_set[j] || std::abs(b(v, j)) <= tol.eps) continue;
          d2[j] = unit_phase(a(v, j) / (b(v, j) * d1[v]));
          col_set[j] = true;
          q.push(n + j);
        }
      } else {
        const std::size_t c = v - n;
        for (std::size_t i = 0; i < n; ++i) {
          if (row_set[i] || std::abs(b(i, c)) <= tol.eps) continue;
          d1[i] = unit_phase(a(i, c) / (b(i, c) * d2[c]));
          row_set[i] = true;
          q.push(i);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (std::abs(a(i, j) - d1[i] * b(i, j) * d2[j]) > tol.eps) return false;
  return true;
}

}  // namespace hadamard

#endif  // HADAMARD_COMPLEX_MATRIX_HPP_
