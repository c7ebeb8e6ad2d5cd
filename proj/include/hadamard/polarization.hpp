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

#ifndef HADAMARD_POLARIZATION_HPP_
#define HADAMARD_POLARIZATION_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hadamard/complex_matrix.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/sphere.hpp"

namespace hadamard {

/// Fully polarized light as a Jones vector in the (H, V) basis.
///
/// Conventions used throughout:
///   |H> = (1, 0)       |V> = (0, 1)
///   |D> = (1, 1)/√2    |A> = (1, -1)/√2
///   |R> = (1, -i)/√2   |L> = (1, i)/√2
/// Stokes image: s1 = |h|² - |v|², s2 = 2 Re(h̄v), s3 = 2 Im(h̄v). With this
/// map the discrete geometric phase of a closed loop is -Ω/2, Ω the solid
/// angle counted positive counter-clockwise from outside; R sits at s3 = -1.
struct JonesVector {
  Complex h{1.0, 0.0};
  Complex v{0.0, 0.0};

  static JonesVector horizontal() { return {1.0, 0.0}; }
  static JonesVector vertical() { return {0.0, 1.0}; }
  static JonesVector diagonal() { return {kInvSqrt2, kInvSqrt2}; }
  static JonesVector antidiagonal() { return {kInvSqrt2, -kInvSqrt2}; }
  static JonesVector right() { return {kInvSqrt2, Complex{0.0, -kInvSqrt2}}; }
  static JonesVector left() { return {kInvSqrt2, Complex{0.0, kInvSqrt2}}; }
  // Linear polarization at `angle` from horizontal.
  static JonesVector linear(double angle) { return {std::cos(angle), std::sin(angle)}; }

  double norm() const { return std::sqrt(std::norm(h) + std::norm(v)); }

  JonesVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw DomainError("JonesVector: cannot normalize the zero vector");
    return {h / n, v / n};
  }

  static constexpr double kInvSqrt2 = 0.70710678118654752440;
};

// <a|b>
inline Complex overlap(const JonesVector& a, const JonesVector& b) {
  return std::conj(a.h) * b.h + std::conj(a.v) * b.v;
}

inline JonesVector apply(const ComplexMatrix& m, const JonesVector& j) {
  if (m.rows() != 2 || m.cols() != 2) throw ShapeError("apply: Jones matrices are 2x2");
  return {m(0, 0) * j.h + m(0, 1) * j.v, m(1, 0) * j.h + m(1, 1) * j.v};
}

inline Vec3 stokes(const JonesVector& j) {
  const Complex c = std::conj(j.h) * j.v;
  return {std::norm(j.h) - std::norm(j.v), 2.0 * c.real(), 2.0 * c.imag()};
}

// A Jones vector with the given Stokes image; its global phase is arbitrary
// but fixed (the larger of the two branches is kept real).
inline JonesVector jones_from_stokes(Vec3 s) {
  s = normalized(s);
  if (s.x >= 0.0) {
    const double a = std::sqrt((1.0 + s.x) / 2.0);
    return {a, Complex{s.y, s.z} / (2.0 * a)};
  }
  const double b = std::sqrt((1.0 - s.x) / 2.0);
  return {Complex{s.y, -s.z} / (2.0 * b), b};
}

enum class RetarderKind { kHalf, kQuarter };

inline double retardance(RetarderKind k) { return k == RetarderKind::kHalf ? kPi : kPi / 2.0; }

struct RetarderSpec {
  RetarderKind kind = RetarderKind::kHalf;
  double axis = 0.0;  // optic-axis angle from horizontal, radians
};

/// Jones matrix of a symmetric retarder:
///   J(δ, θ) = Rot(-θ) · diag(e^{-iδ/2}, e^{iδ/2}) · Rot(θ),
///   Rot(θ) = [[cos θ, sin θ], [-sin θ, cos θ]],
/// with δ the retardance scaled by `fraction` (1 for the full plate). Always
/// in SU(2); a half plate at θ is -i·[[cos 2θ, sin 2θ], [sin 2θ, -cos 2θ]].
inline ComplexMatrix partial_retarder(const RetarderSpec& spec, double fraction) {
  if (!std::isfinite(spec.axis)) throw DomainError("retarder axis must be finite");
  const double half = retardance(spec.kind) * fraction / 2.0;
  const double c2 = std::cos(2.0 * spec.axis), s2 = std::sin(2.0 * spec.axis);
  // Expanded form of the product above: cos(δ/2)·I - i·sin(δ/2)·(c2 Z + s2 X).
  const Complex ci = std::cos(half);
  const Complex is = Complex{0.0, std::sin(half)};
  return ComplexMatrix{{ci - is * c2, -is * s2}, {-is * s2, ci + is * c2}};
}

inline ComplexMatrix waveplate_matrix(const RetarderSpec& spec) { return partial_retarder(spec, 1.0); }

// One slot of a rail program. When `alpha_linked` is set the plate's axis is
// the sweep angle α and `retarder.axis` is ignored.
struct Plate {
  RetarderSpec retarder;
  bool alpha_linked = false;

  RetarderSpec at(double alpha) const {
    return alpha_linked ? RetarderSpec{retarder.kind, alpha} : retarder;
  }
};

// Ordered waveplates on one rail; plates[0] acts first. All α-linked plates
// share the single sweep angle.
struct RailProgram {
  std::vector<Plate> plates;
};

// Ordered product of the rail's plates at sweep angle α (last plate leftmost).
inline ComplexMatrix rail_composite(const RailProgram& program, double alpha) {
  if (program.plates.empty()) throw DomainError("rail_composite: empty program");
  ComplexMatrix m = ComplexMatrix::identity(2);
  for (const auto& p : program.plates) m = waveplate_matrix(p.at(alpha)) * m;
  return m;
}

// ---------------------------------------------------------------------------
// Rails of the variable-phase section.

enum class Rail { kTop, kMiddle, kBottom };

inline constexpr std::array<Rail, 3> kAllRails{Rail::kTop, Rail::kMiddle, Rail::kBottom};

inline std::string_view rail_name(Rail r) {
  switch (r) {
    case Rail::kTop: return "rail-top";
    case Rail::kMiddle: return "rail-middle";
    case Rail::kBottom: return "rail-bottom";
  }
  return "";
}

inline std::optional<Rail> parse_rail(std::string_view name) {
  for (Rail r : kAllRails)
    if (rail_name(r) == name) return r;
  return std::nullopt;
}

// Signs (+1 for +45°, -1 for -45°) of the four quarter plates in the layout
// [outer Q, P(α), inner Q, inner Q, P(α), outer Q].
using QuarterSigns = std::array<int, 4>;

inline RailProgram rail_program_from_signs(const QuarterSigns& s) {
  auto q = [](int sign) { return Plate{{RetarderKind::kQuarter, sign * kPi / 4.0}, false}; };
  const Plate p{{RetarderKind::kHalf, 0.0}, true};
  return RailProgram{{q(s[0]), p, q(s[1]), q(s[2]), p, q(s[3])}};
}

/// Target polarization unitary of each rail, up to an α-independent global
/// phase:
///   top:    i·X                                  (flip, fixed phase)
///   middle: I
///   bottom: i·[[0, e^{-i4α}], [e^{i4α}, 0]]      (flip plus variable phase)
/// The bottom target carries e^{-i4α} on the V→H amplitude: with the pinned
/// Jones conventions that is the sign produced by the traversal
/// V, R, P(α), L, H, R, P(α), L, H.
inline ComplexMatrix rail_target(Rail rail, double alpha) {
  switch (rail) {
    case Rail::kTop: return ComplexMatrix{{0.0, kI}, {kI, 0.0}};
    case Rail::kMiddle: return ComplexMatrix::identity(2);
    case Rail::kBottom:
      return ComplexMatrix{{0.0, kI * std::exp(Complex{0.0, -4.0 * alpha})},
                           {kI * std::exp(Complex{0.0, 4.0 * alpha}), 0.0}};
  }
  throw DomainError("rail_target: unknown rail");
}

// Polarization entering each rail in the physical layout: H on top (walked
// off from the middle rail), V on the bottom; the middle rail carries both,
// H is used as its representative.
inline JonesVector rail_input(Rail rail) {
  return rail == Rail::kBottom ? JonesVector::vertical() : JonesVector::horizontal();
}

// The equatorial point crossed by a half plate at α carrying R to L:
// linear polarization at α + π/4, Stokes longitude 2α + π/2.
inline JonesVector half_plate_crossing(double alpha) { return JonesVector::linear(alpha + kPi / 4.0); }

/// Polarization states at every stage boundary of `program`, with the
/// midpoint of each half-plate arc inserted (the half plate carries a pole to
/// the opposite pole, so its arc is only pinned down by its midpoint).
inline std::vector<JonesVector> traversal_waypoints(const RailProgram& program, const JonesVector& input,
                                                    double alpha) {
  std::vector<JonesVector> out{input};
  JonesVector psi = input;
  for (const auto& p : program.plates) {
    const RetarderSpec spec = p.at(alpha);
    if (spec.kind == RetarderKind::kHalf) out.push_back(apply(partial_retarder(spec, 0.5), psi));
    psi = apply(waveplate_matrix(spec), psi);
    out.push_back(psi);
  }
  return out;
}

namespace detail {

inline bool same_point(const JonesVector& a, const JonesVector& b, double tol) {
  return norm(stokes(a) - stokes(b)) <= tol;
}

inline bool matches_target(const RailProgram& prog, Rail rail, const std::vector<double>& alphas) {
  std::optional<Complex> global;
  for (double a : alphas) {
    const ComplexMatrix m = rail_composite(prog, a);
    const ComplexMatrix t = rail_target(rail, a);
    if (!equal_up_to_global_phase(m, t)) return false;
    // The global phase itself must not depend on α.
    Complex c{};
    for (std::size_t i = 0; i < 4; ++i)
      if (std::abs(t.data()[i]) > 0.5) c = m.data()[i] / t.data()[i];
    if (global && std::abs(*global - c) > 1e-9) return false;
    global = c;
  }
  return true;
}

inline bool matches_bottom_traversal(const RailProgram& prog, double alpha) {
  const auto w = traversal_waypoints(prog, JonesVector::vertical(), alpha);
  const JonesVector p = half_plate_crossing(alpha);
  const std::array<JonesVector, 9> want{JonesVector::vertical(), JonesVector::right(), p,
                                        JonesVector::left(),     JonesVector::horizontal(),
                                        JonesVector::right(),    p,
                                        JonesVector::left(),     JonesVector::horizontal()};
  if (w.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i)
    if (!same_point(w[i], want[i], 1e-9)) return false;
  return true;
}

}  // namespace detail

/// Exhaustive search over the 2^4 quarter-plate sign patterns for `rail`,
/// in lexicographic order with +45° before -45°. A pattern is accepted when
/// its composite equals rail_target() up to one α-independent global phase
/// and, for the bottom rail, when an input V traverses
/// V, R, P(α), L, H, R, P(α), L, H. Returns nullopt when nothing matches.
inline std::optional<QuarterSigns> search_rail_signs(Rail rail) {
  const std::vector<double> alphas{0.0, 0.1, 0.37, 0.9, 2.2};
  for (int code = 0; code < 16; ++code) {
    QuarterSigns s{};
    for (int b = 0; b < 4; ++b) s[static_cast<std::size_t>(b)] = (code >> (3 - b)) & 1 ? -1 : 1;
    const RailProgram prog = rail_program_from_signs(s);
    if (!detail::matches_target(prog, rail, alphas)) continue;
    if (rail == Rail::kBottom) {
      bool ok = true;
      for (double a : alphas) ok = ok && detail::matches_bottom_traversal(prog, a);
      if (!ok) continue;
    }
    return s;
  }
  return std::nullopt;
}

// Result of search_rail_signs(), frozen.
inline QuarterSigns preset_signs(Rail rail) {
  switch (rail) {
    case Rail::kTop: return {1, 1, -1, 1};
    case Rail::kMiddle: return {1, 1, -1, -1};
    case Rail::kBottom: return {-1, 1, 1, 1};
  }
  throw DomainError("preset_signs: unknown rail");
}

inline RailProgram rail_preset(Rail rail) { return rail_program_from_signs(preset_signs(rail)); }

// ---------------------------------------------------------------------------
// Paths on the Poincaré sphere.

struct SpherePath {
  std::vector<JonesVector> states;
  std::vector<Vec3> points;  // stokes(states[k])

  std::size_t size() const { return states.size(); }
  void push(const JonesVector& j) {
    states.push_back(j);
    points.push_back(stokes(j));
  }
};

inline constexpr std::size_t kDefaultStepsPerPlate = 256;

/// Discretized evolution of `input` through `program` at sweep angle α.
/// Each plate is split into steps_per_plate partial retarders
/// J(δ·k/steps, axis), k = 1..steps, applied to the state entering the plate,
/// so the path holds 1 + plates·steps states.
inline SpherePath trace_path(const RailProgram& program, const JonesVector& input, double alpha,
                             std::size_t steps_per_plate = kDefaultStepsPerPlate) {
  if (steps_per_plate < 1) throw DomainError("trace_path: steps_per_plate must be >= 1");
  SpherePath path;
  path.states.reserve(1 + program.plates.size() * steps_per_plate);
  path.points.reserve(path.states.capacity());
  JonesVector psi = input.normalized();
  path.push(psi);
  for (const auto& p : program.plates) {
    const RetarderSpec spec = p.at(alpha);
    for (std::size_t k = 1; k <= steps_per_plate; ++k) {
      path.push(apply(partial_retarder(spec, static_cast<double>(k) / static_cast<double>(steps_per_plate)), psi));
    }
    psi = path.states.back();
  }
  return path;
}

/// Geodesic polygon through `vertices`, each edge split into steps_per_edge
/// slerp steps, with states from jones_from_stokes(). When `closed` is set the
/// last vertex is joined back to the first.
inline SpherePath geodesic_path(const std::vector<Vec3>& vertices, std::size_t steps_per_edge, bool closed) {
  if (vertices.empty()) throw DomainError("geodesic_path: no vertices");
  if (steps_per_edge < 1) throw DomainError("geodesic_path: steps_per_edge must be >= 1");
  SpherePath path;
  path.push(jones_from_stokes(vertices.front()));
  const std::size_t edges = closed ? vertices.size() : vertices.size() - 1;
  for (std::size_t e = 0; e < edges; ++e) {
    const Vec3 a = vertices[e], b = vertices[(e + 1) % vertices.size()];
    if (kPi - arc_length(a, b) < 1e-9) throw DegenerateError("geodesic_path: antipodal edge");
    for (std::size_t k = 1; k <= steps_per_edge; ++k) {
      path.push(jones_from_stokes(slerp(a, b, static_cast<double>(k) / static_cast<double>(steps_per_edge))));
    }
  }
  return path;
}

inline double path_arc_length(const SpherePath& path) {
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.points.size(); ++k) total += arc_length(path.points[k], path.points[k + 1]);
  return total;
}

inline constexpr double kMinOverlap = 1e-6;

/// Discrete Pancharatnam phase -arg Π_k <ψ_k|ψ_{k+1}>, with the closure
/// factor <ψ_N|ψ_0> appended when `close` is set. Gauge invariant for closed
/// paths; in (-π, π].
inline double pancharatnam_phase(const SpherePath& path, bool close) {
  Complex prod{1.0, 0.0};
  auto step = [&](const JonesVector& a, const JonesVector& b) {
    const Complex o = overlap(a, b);
    if (std::abs(o) <= kMinOverlap) {
      throw DegenerateError("pancharatnam_phase: orthogonal consecutive states; refine the discretization");
    }
    prod *= o / std::abs(o);
  };
  for (std::size_t k = 0; k + 1 < path.states.size(); ++k) step(path.states[k], path.states[k + 1]);
  if (close && path.states.size() > 1) step(path.states.back(), path.states.front());
  return wrap_angle(-std::arg(prod));
}

/// Worst-case violation of the parallel-transport condition <ψ|ψ̇> = 0 along
/// the path: max_k |Im <ψ_k|ψ_{k+1} - ψ_k>| / ||ψ_{k+1} - ψ_k||. Zero for a
/// path that stays in phase with itself; about 1 for pure dynamical phase.
/// Steps that do not move the state are skipped.
inline double parallel_transport_residual(const SpherePath& path) {
  if (path.states.size() < 2) throw DomainError("parallel_transport_residual: path needs >= 2 states");
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < path.states.size(); ++k) {
    const JonesVector& a = path.states[k];
    const JonesVector& b = path.states[k + 1];
    const JonesVector d{b.h - a.h, b.v - a.v};
    const double step = d.norm();
    if (step < 1e-14) continue;
    worst = std::max(worst, std::abs(overlap(a, d).imag()) / step);
  }
  return worst;
}

// ---------------------------------------------------------------------------

struct GeometricPhaseReport {
  double pancharatnam = 0.0;        // radians, (-π, π]
  double solid_angle = 0.0;         // steradians, [0, 4π)
  double dynamical_residual = 0.0;  // parallel_transport_residual of the trace
  bool orthogonal_endpoints = false;
};

/// Geometric phase of one rail's traversal.
///
/// When the final state overlaps the input, the path is closed by the
/// Pancharatnam connection <ψ_N|ψ_0>. When the endpoints are orthogonal (the
/// flipping rails), the closure is referenced to the flipped input X·ψ_0: the
/// closure factor is <ψ_N|X ψ_0> and, on the sphere, the path is closed
/// through the state ψ_0 + X ψ_0 (D for H or V inputs). The solid angle is
/// that of the whole closed trace, so pancharatnam = -solid_angle/2 (mod 2π)
/// whenever the evolution is parallel-transported.
inline GeometricPhaseReport geometric_phase_report(const RailProgram& program, const JonesVector& input,
                                                   double alpha,
                                                   std::size_t steps = kDefaultStepsPerPlate) {
  const SpherePath path = trace_path(program, input, alpha, steps);
  GeometricPhaseReport rep;
  rep.dynamical_residual = parallel_transport_residual(path);

  const JonesVector& first = path.states.front();
  const JonesVector& last = path.states.back();
  std::vector<Vec3> polygon;
  polygon.reserve(path.points.size() + 1);
  for (const auto& p : path.points)
    if (polygon.empty() || arc_length(polygon.back(), p) > 1e-12) polygon.push_back(p);

  if (std::abs(overlap(last, first)) > kMinOverlap) {
    rep.pancharatnam = pancharatnam_phase(path, true);
  } else {
    rep.orthogonal_endpoints = true;
    const JonesVector flipped{first.v, first.h};
    const JonesVector mid_raw{first.h + flipped.h, first.v + flipped.v};
    if (mid_raw.norm() < 1e-9) {
      throw DegenerateError("geometric_phase_report: no closure reference for this input");
    }
    const double open = -pancharatnam_phase(path, false);
    const double closure = std::arg(overlap(last, flipped));
    rep.pancharatnam = wrap_angle(-(open + closure));
    polygon.push_back(stokes(mid_raw.normalized()));
  }
  if (polygon.size() > 1 && arc_length(polygon.front(), polygon.back()) <= 1e-12) polygon.pop_back();
  double omega = polygon.size() >= 3 ? solid_angle(polygon) : 0.0;
  omega = std::fmod(omega, 4.0 * kPi);
  if (omega < 0.0) omega += 4.0 * kPi;
  if (omega >= 4.0 * kPi - 1e-12) omega = 0.0;
  rep.solid_angle = omega;
  return rep;
}

// Lune R -> equator(4α) -> L -> H: the loop whose enclosed area tracks the
// bottom rail's 4α phase increment.
inline std::vector<Vec3> lune_vertices(double alpha) {
  return {stokes(JonesVector::right()), equator_point(4.0 * alpha), stokes(JonesVector::left()),
          stokes(JonesVector::horizontal())};
}

struct LuneReport {
  double solid_angle = 0.0;   // signed, steradians
  double pancharatnam = 0.0;  // of the discretized closed loop
};

inline LuneReport lune_report(double alpha, std::size_t steps_per_edge = kDefaultStepsPerPlate) {
  const auto v = lune_vertices(alpha);
  LuneReport rep;
  rep.solid_angle = solid_angle(v);
  rep.pancharatnam = pancharatnam_phase(geodesic_path(v, steps_per_edge, true), true);
  return rep;
}

}  // namespace hadamard

#endif  // HADAMARD_POLARIZATION_HPP_
