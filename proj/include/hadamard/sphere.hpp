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

#ifndef HADAMARD_SPHERE_HPP_
#define HADAMARD_SPHERE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "hadamard/complex_matrix.hpp"

namespace hadamard {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(Vec3 a) { return (1.0 / norm(a)) * a; }

// Great-circle distance between unit vectors; stable near 0 and pi.
inline double arc_length(Vec3 a, Vec3 b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

// Point on the equator at the given longitude (radians from +x towards +y).
inline Vec3 equator_point(double longitude) { return {std::cos(longitude), std::sin(longitude), 0.0}; }

// Spherical interpolation along the minor great-circle arc a -> b.
inline Vec3 slerp(Vec3 a, Vec3 b, double t) {
  const double omega = arc_length(a, b);
  if (omega < 1e-15) return a;
  const double s = std::sin(omega);
  return (std::sin((1.0 - t) * omega) / s) * a + (std::sin(t * omega) / s) * b;
}

// Signed solid angle of the geodesic triangle (a, b, c), positive when the
// circulation is counter-clockwise seen from outside. Uses
// tan(E/2) = a.(b x c) / (1 + a.b + b.c + c.a), the closed form of
// l'Huilier's spherical excess for unit vectors.
inline double triangle_solid_angle(Vec3 a, Vec3 b, Vec3 c) {
  return 2.0 * std::atan2(dot(a, cross(b, c)), 1.0 + dot(a, b) + dot(b, c) + dot(c, a));
}

namespace detail {

// Fan apex for the polygon decomposition: the normalized vertex mean, unless
// that is ill-defined or close to the antipode of a vertex.
inline Vec3 fan_apex(const std::vector<Vec3>& v) {
  auto clearance = [&](Vec3 c) {
    double m = 2.0;
    for (const auto& p : v) m = std::min(m, 1.0 + dot(c, p));
    return m;
  };
  Vec3 mean{};
  for (const auto& p : v) mean = mean + p;
  if (norm(mean) > 1e-6) {
    const Vec3 c = normalized(mean);
    if (clearance(c) > 1e-3) return c;
  }
  static constexpr std::array<Vec3, 6> kCandidates{{{0.31, 0.52, 0.79},
                                                    {-0.62, 0.27, 0.73},
                                                    {0.44, -0.81, 0.38},
                                                    {0.57, 0.33, -0.75},
                                                    {-0.29, -0.64, -0.71},
                                                    {-0.83, 0.49, -0.26}}};
  Vec3 best{};
  double best_clear = -1.0;
  for (const auto& c : kCandidates) {
    const Vec3 u = normalized(c);
    const double cl = clearance(u);
    if (cl > best_clear) {
      best_clear = cl;
      best = u;
    }
  }
  return best;
}

}  // namespace detail

/// Signed solid angle enclosed by the closed geodesic polygon through
/// `vertices` (the last vertex connects back to the first).
///
/// The polygon is fanned into geodesic triangles from an apex, and the signed
/// spherical excesses are summed. For a simple polygon whose interior holds
/// the apex this is its area, positive for counter-clockwise circulation seen
/// from outside; for self-overlapping traces it is the winding-weighted area,
/// which is what a geometric phase sees (only its value mod 4 pi matters
/// there).
///
/// Throws DegenerateError for fewer than 3 vertices, or for consecutive
/// vertices that coincide or are antipodal (the geodesic is not unique).
inline double solid_angle(const std::vector<Vec3>& vertices) {
  if (vertices.size() < 3) throw DegenerateError("solid_angle: need at least 3 vertices");
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 a = vertices[i], b = vertices[(i + 1) % n];
    const double d = arc_length(a, b);
    if (d < 1e-12) throw DegenerateError("solid_angle: consecutive vertices coincide");
    if (kPi - d < 1e-9) throw DegenerateError("solid_angle: consecutive vertices are antipodal");
  }
  const Vec3 apex = detail::fan_apex(vertices);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += triangle_solid_angle(apex, vertices[i], vertices[(i + 1) % n]);
  if (std::abs(total) >= 4.0 * kPi) total = std::fmod(total, 4.0 * kPi);
  return total;
}

}  // namespace hadamard

#endif  // HADAMARD_SPHERE_HPP_
