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

#ifndef HADAMARD_PHYSICAL_HPP_
#define HADAMARD_PHYSICAL_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "hadamard/circuit.hpp"
#include "hadamard/complex_matrix.hpp"
#include "hadamard/polarization.hpp"

namespace hadamard {

enum class Polarization { kH = 0, kV = 1 };

// A (polarization, rail) basis label of the rail-encoded network.
struct RailMode {
  Polarization pol;
  Rail rail;

  // Index in the 6-dimensional rail x polarization space.
  std::size_t index() const { return static_cast<std::size_t>(rail) * 2 + static_cast<std::size_t>(pol); }
  friend bool operator==(const RailMode&, const RailMode&) = default;
};

inline constexpr std::size_t kRailModes = 6;

// Waveplates acting on some rails; rails without a matrix are untouched.
struct PlateStage {
  std::array<std::optional<ComplexMatrix>, 3> per_rail;
};

// Calcite beam displacer: H walks off one rail up (bottom -> middle ->
// top), V passes undeviated. The top rail's H slot is empty wherever a
// displacer sits, so it is routed to the bottom to keep the map a permutation.
struct DisplacerStage {};

// Polarizing beamsplitters at the output: polarization becomes position,
// one detector per (polarization, rail). The identity on the mode space.
struct SplitterStage {};

using LayoutStage = std::variant<PlateStage, DisplacerStage, SplitterStage>;

/// Rail-and-polarization construction of the complex Hadamard network.
///
/// Inputs: |0> = |H,m>, |1> = |V,b>, |2> = |V,m>, |3> = |H,b>.
/// Stages: half plates at 22.5° on m and b; displacer; the variable-phase
/// section (rail presets, each times its calibration phase); displacer; half
/// plates at 22.5° on t and m; polarizing splitters.
/// Detectors: D0 = |H,m>, D1 = |V,t>, D2 = |V,m>, D3 = |H,t>.
struct PhysicalLayout {
  std::size_t rails = 3;
  std::array<RailMode, 4> inputs{};
  std::array<RailMode, 4> detectors{};
  std::vector<LayoutStage> stages;
};

inline PhysicalLayout physical_layout(double alpha, const std::array<double, 3>& rail_phases = {0.0, 0.0, 0.0}) {
  using P = Polarization;
  PhysicalLayout layout;
  layout.inputs = {RailMode{P::kH, Rail::kMiddle}, RailMode{P::kV, Rail::kBottom}, RailMode{P::kV, Rail::kMiddle},
                   RailMode{P::kH, Rail::kBottom}};
  layout.detectors = {RailMode{P::kH, Rail::kMiddle}, RailMode{P::kV, Rail::kTop}, RailMode{P::kV, Rail::kMiddle},
                      RailMode{P::kH, Rail::kTop}};

  const ComplexMatrix a = waveplate_matrix({RetarderKind::kHalf, kPi / 8.0});
  PlateStage first, section, last;
  first.per_rail[static_cast<std::size_t>(Rail::kMiddle)] = a;
  first.per_rail[static_cast<std::size_t>(Rail::kBottom)] = a;
  for (Rail r : kAllRails) {
    const auto i = static_cast<std::size_t>(r);
    section.per_rail[i] = std::exp(Complex{0.0, rail_phases[i]}) * rail_composite(rail_preset(r), alpha);
  }
  last.per_rail[static_cast<std::size_t>(Rail::kTop)] = a;
  last.per_rail[static_cast<std::size_t>(Rail::kMiddle)] = a;

  layout.stages = {first, DisplacerStage{}, section, DisplacerStage{}, last, SplitterStage{}};
  return layout;
}

// Full 6x6 transfer matrix of the layout on the rail x polarization space.
inline ComplexMatrix layout_unitary(const PhysicalLayout& layout) {
  ComplexMatrix u = ComplexMatrix::identity(kRailModes);
  for (const auto& stage : layout.stages) {
    if (const auto* plates = std::get_if<PlateStage>(&stage)) {
      for (std::size_t r = 0; r < 3; ++r) {
        if (!plates->per_rail[r]) continue;
        detail::apply_two_mode(u, 2 * r, 2 * r + 1, *plates->per_rail[r]);
      }
    } else if (std::holds_alternative<DisplacerStage>(stage)) {
      ComplexMatrix next(kRailModes, kRailModes);
      for (std::size_t r = 0; r < 3; ++r) {
        const std::size_t h_from = 2 * r, v_from = 2 * r + 1;
        const std::size_t h_to = 2 * ((r + 2) % 3);  // one rail up, top wraps to bottom
        for (std::size_t c = 0; c < kRailModes; ++c) {
          next(h_to, c) = u(h_from, c);
          next(v_from, c) = u(v_from, c);
        }
      }
      u = std::move(next);
    }
  }
  return u;
}

/// 4x4 transfer matrix from the encoded inputs |0>..|3> to detectors
/// D0..D3. For every α it equals h4(θ′) up to diagonal phases with
/// θ′ = 4α + c + 2φ_m - φ_t - φ_b, c = calibrated_phase_offset().
inline ComplexMatrix physical_unitary(double alpha, const std::array<double, 3>& rail_phases = {0.0, 0.0, 0.0}) {
  const PhysicalLayout layout = physical_layout(alpha, rail_phases);
  const ComplexMatrix full = layout_unitary(layout);
  std::vector<std::size_t> rows, cols;
  for (const auto& d : layout.detectors) rows.push_back(d.index());
  for (const auto& in : layout.inputs) cols.push_back(in.index());
  return full.select(rows, cols);
}

// c in θ′ = 4α + c: the H4 phase of the layout at α = 0 with zero rail phases.
inline double calibrated_phase_offset() { return hadamard_phase(physical_unitary(0.0)); }

// The H4 phase realized by the layout at sweep angle α.
inline double theta_prime(double alpha, const std::array<double, 3>& rail_phases = {0.0, 0.0, 0.0}) {
  const auto t = static_cast<std::size_t>(Rail::kTop);
  const auto m = static_cast<std::size_t>(Rail::kMiddle);
  const auto b = static_cast<std::size_t>(Rail::kBottom);
  return 4.0 * alpha + calibrated_phase_offset() + 2.0 * rail_phases[m] - rail_phases[t] - rail_phases[b];
}

}  // namespace hadamard

#endif  // HADAMARD_PHYSICAL_HPP_
