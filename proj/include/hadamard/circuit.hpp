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

#ifndef HADAMARD_CIRCUIT_HPP_
#define HADAMARD_CIRCUIT_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "hadamard/complex_matrix.hpp"
#include "hadamard/errors.hpp"

namespace hadamard {

struct BeamSplitter {
  std::size_t a = 0;
  std::size_t b = 1;
  double reflectivity = 0.5;
};

struct PhaseShift {
  std::size_t mode = 0;
  double phi = 0.0;
};

struct Swap {
  std::size_t a = 0;
  std::size_t b = 1;
};

using CircuitElement = std::variant<BeamSplitter, PhaseShift, Swap>;

/// Beamsplitter with the symmetric-i convention:
///   [[√t, i√r], [i√r, √t]],  t = 1 - r.
inline ComplexMatrix beamsplitter_matrix(double reflectivity) {
  if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
    throw DomainError("beamsplitter reflectivity must lie in [0, 1]");
  }
  const double st = std::sqrt(1.0 - reflectivity);
  const Complex ir{0.0, std::sqrt(reflectivity)};
  return ComplexMatrix{{st, ir}, {ir, st}};
}

// Ordered list of two-mode elements over `modes` modes; elements[0] acts first.
class ModeCircuit {
 public:
  explicit ModeCircuit(std::size_t modes) : modes_(modes) {
    if (modes == 0) throw ShapeError("ModeCircuit: need at least one mode");
  }

  std::size_t modes() const { return modes_; }
  const std::vector<CircuitElement>& elements() const { return elements_; }

  ModeCircuit& add(const CircuitElement& e) {
    std::visit([this](const auto& el) { validate(el); }, e);
    elements_.push_back(e);
    return *this;
  }
  ModeCircuit& beamsplitter(std::size_t a, std::size_t b, double r) { return add(BeamSplitter{a, b, r}); }
  ModeCircuit& phase(std::size_t mode, double phi) { return add(PhaseShift{mode, phi}); }
  ModeCircuit& swap(std::size_t a, std::size_t b) { return add(Swap{a, b}); }

 private:
  void check_mode(std::size_t m) const {
    if (m >= modes_) {
      throw ShapeError("circuit element mode " + std::to_string(m) + " out of range for " +
                       std::to_string(modes_) + " modes");
    }
  }
  void validate(const BeamSplitter& e) const {
    check_mode(e.a);
    check_mode(e.b);
    if (e.a == e.b) throw ShapeError("beamsplitter modes must differ");
    if (!(e.reflectivity >= 0.0 && e.reflectivity <= 1.0)) throw DomainError("reflectivity must lie in [0, 1]");
  }
  void validate(const PhaseShift& e) const {
    check_mode(e.mode);
    if (!std::isfinite(e.phi)) throw DomainError("phase must be finite");
  }
  void validate(const Swap& e) const {
    check_mode(e.a);
    check_mode(e.b);
    if (e.a == e.b) throw ShapeError("swap modes must differ");
  }

  std::size_t modes_;
  std::vector<CircuitElement> elements_;
};

namespace detail {

// Left-multiplies rows a, b of u by the 2x2 block g.
inline void apply_two_mode(ComplexMatrix& u, std::size_t a, std::size_t b, const ComplexMatrix& g) {
  for (std::size_t c = 0; c < u.cols(); ++c) {
    const Complex x = u(a, c), y = u(b, c);
    u(a, c) = g(0, 0) * x + g(0, 1) * y;
    u(b, c) = g(1, 0) * x + g(1, 1) * y;
  }
}

inline void apply_element(ComplexMatrix& u, const CircuitElement& e) {
  std::visit(
      [&](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          apply_two_mode(u, el.a, el.b, beamsplitter_matrix(el.reflectivity));
        } else if constexpr (std::is_same_v<T, PhaseShift>) {
          const Complex p = std::exp(Complex{0.0, el.phi});
          for (std::size_t c = 0; c < u.cols(); ++c) u(el.mode, c) *= p;
        } else {
          for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(el.a, c), u(el.b, c));
        }
      },
      e);
}

}  // namespace detail

inline ComplexMatrix circuit_unitary(const ModeCircuit& c) {
  ComplexMatrix u = ComplexMatrix::identity(c.modes());
  for (const auto& e : c.elements()) detail::apply_element(u, e);
  return u;
}

/// The four-mode complex Hadamard family
///   H4(θ) = 1/2 [[1,  1,      1,  1     ],
///                [1,  e^{iθ}, -1, -e^{iθ}],
///                [1, -1,      1, -1     ],
///                [1, -e^{iθ}, -1,  e^{iθ}]].
inline ComplexMatrix h4(double theta) {
  const Complex e = std::exp(Complex{0.0, theta});
  ComplexMatrix m{{1.0, 1.0, 1.0, 1.0}, {1.0, e, -1.0, -e}, {1.0, -1.0, 1.0, -1.0}, {1.0, -e, -1.0, e}};
  m *= 0.5;
  return m;
}

// Unitary with every |M_ij| = 1/√n.
inline bool is_complex_hadamard(const ComplexMatrix& m, Tolerance tol = kDefaultTolerance) {
  if (!m.is_square() || m.empty()) throw ShapeError("is_complex_hadamard: matrix must be square");
  if (!is_unitary(m, tol)) return false;
  const double target = 1.0 / std::sqrt(static_cast<double>(m.rows()));
  for (const auto& z : m.data())
    if (std::abs(std::abs(z) - target) > tol.eps) return false;
  return true;
}

/// The θ of a matrix in the H4 family read off its rephasing invariant
/// arg(M00·M11 / (M01·M10)); invariant under diagonal phases on either side.
inline double hadamard_phase(const ComplexMatrix& m) {
  if (m.rows() < 2 || m.cols() < 2) throw ShapeError("hadamard_phase: need at least 2x2");
  const Complex den = m(0, 1) * m(1, 0);
  if (std::abs(den) == 0.0) throw NumericalError("hadamard_phase: zero entry in the leading 2x2 block");
  return std::arg(m(0, 0) * m(1, 1) / den);
}

// Output = M[perm[k]] row-wise and column-wise: entry (i, j) of the result is
// m(rows[i], cols[j]).
inline ComplexMatrix relabel(const ComplexMatrix& m, const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols) {
  return m.select(rows, cols);
}

/// Number of distinct single-photon routes from input_mode to output_mode.
/// A beamsplitter with 0 < r < 1 offers two routes (transmit, reflect);
/// r = 0 or 1 offers one; swaps and phases pass through. A pair (i, j) admits
/// single-photon interference iff the count exceeds 1.
inline std::uint64_t path_count(const ModeCircuit& c, std::size_t input_mode, std::size_t output_mode) {
  if (input_mode >= c.modes() || output_mode >= c.modes()) throw ShapeError("path_count: mode out of range");
  std::vector<std::uint64_t> count(c.modes(), 0);
  count[input_mode] = 1;
  for (const auto& e : c.elements()) {
    std::visit(
        [&](const auto& el) {
          using T = std::decay_t<decltype(el)>;
          if constexpr (std::is_same_v<T, BeamSplitter>) {
            const std::uint64_t ca = count[el.a], cb = count[el.b];
            if (el.reflectivity > 0.0 && el.reflectivity < 1.0) {
              count[el.a] = count[el.b] = ca + cb;
            } else if (el.reflectivity == 1.0) {
              count[el.a] = cb;
              count[el.b] = ca;
            }
          } else if constexpr (std::is_same_v<T, Swap>) {
            std::swap(count[el.a], count[el.b]);
          }
        },
        e);
  }
  return count[output_mode];
}

/// The loop-free four-mode network: 50:50 beamsplitters on (0,1) and (2,3),
/// a swap of the middle modes, the phase θ on the lowest mode, and a second
/// beamsplitter layer on (0,1) and (2,3).
inline ModeCircuit hadamard_network(double theta) {
  ModeCircuit c(4);
  c.beamsplitter(0, 1, 0.5).beamsplitter(2, 3, 0.5);
  c.swap(1, 2);
  c.phase(3, theta);
  c.beamsplitter(0, 1, 0.5).beamsplitter(2, 3, 0.5);
  return c;
}

// H4 port k is network mode kHadamardNetworkPorts[k], on both the input and
// the output side.
inline const std::vector<std::size_t> kHadamardNetworkPorts{0, 2, 1, 3};

// circuit_unitary(hadamard_network(θ)) with ports relabelled onto H4's.
inline ComplexMatrix hadamard_network_unitary(double theta) {
  return relabel(circuit_unitary(hadamard_network(theta)), kHadamardNetworkPorts, kHadamardNetworkPorts);
}

}  // namespace hadamard

#endif  // HADAMARD_CIRCUIT_HPP_
