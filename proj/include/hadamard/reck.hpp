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

#ifndef HADAMARD_RECK_HPP_
#define HADAMARD_RECK_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "hadamard/circuit.hpp"
#include "hadamard/complex_matrix.hpp"
#include "hadamard/errors.hpp"

namespace hadamard {

// Triangular mesh: `elements` applied in order, then a phase per output mode.
struct MeshPlan {
  std::size_t modes = 0;
  std::vector<CircuitElement> elements;
  std::vector<double> residual_phases;

  std::size_t beamsplitter_count() const {
    std::size_t n = 0;
    for (const auto& e : elements) n += std::holds_alternative<BeamSplitter>(e) ? 1 : 0;
    return n;
  }
};

inline ComplexMatrix recompose(const MeshPlan& plan) {
  ModeCircuit c(plan.modes);
  for (const auto& e : plan.elements) c.add(e);
  for (std::size_t k = 0; k < plan.residual_phases.size(); ++k) c.phase(k, plan.residual_phases[k]);
  return circuit_unitary(c);
}

/// Reck-style triangular decomposition of a unitary into beamsplitters of
/// variable reflectivity, one phase per beamsplitter, and residual output
/// phases.
///
/// Works on W = U†: for each column j, from the last row up to j+1, the entry
/// W[i][j] is nulled against W[i-1][j] by a unit G = BS(r)·phase(φ) on modes
/// (i-1, i). When done, W is diagonal D and U = D†·G_K···G_1, so the units
/// become the mesh in elimination order and D† the residual phases. At most
/// n(n-1)/2 beamsplitters; entries that are already zero are skipped.
inline MeshPlan reck_decompose(const ComplexMatrix& u, Tolerance tol = kDefaultTolerance) {
  if (!u.is_square() || u.empty()) throw ShapeError("reck_decompose: matrix must be square");
  if (!is_unitary(u, tol)) throw DomainError("reck_decompose: input is not unitary within tolerance");
  const std::size_t n = u.rows();
  MeshPlan plan;
  plan.modes = n;
  ComplexMatrix w = u.adjoint();

  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t i = n - 1; i > j; --i) {
      const Complex x = w(i - 1, j);
      const Complex y = w(i, j);
      const double ay = std::abs(y);
      if (ay < 1e-15) continue;
      const double ax = std::abs(x);
      const double r = (ay * ay) / (ax * ax + ay * ay);
      // i√r e^{iφ} x + √t y = 0  =>  φ = arg(y) - arg(x) + π/2.
      const double phi = ax < 1e-300 ? 0.0 : wrap_angle(std::arg(y) - std::arg(x) + kPi / 2.0);
      plan.elements.emplace_back(PhaseShift{i - 1, phi});
      plan.elements.emplace_back(BeamSplitter{i - 1, i, r});

      const Complex p = std::exp(Complex{0.0, phi});
      for (std::size_t c = 0; c < n; ++c) w(i - 1, c) *= p;
      detail::apply_two_mode(w, i - 1, i, beamsplitter_matrix(r));
      w(i, j) = 0.0;
    }
  }
  plan.residual_phases.resize(n);
  for (std::size_t k = 0; k < n; ++k) plan.residual_phases[k] = wrap_angle(-std::arg(w(k, k))) + 0.0;
  return plan;
}

}  // namespace hadamard

#endif  // HADAMARD_RECK_HPP_
