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

#include <gtest/gtest.h>

#include <cmath>

#include "hadamard/polarization.hpp"
#include "hadamard/random.hpp"
#include "hadamard/sphere.hpp"

namespace hadamard {
namespace {

constexpr double kTight = 1e-12;

double det_distance_from_one(const ComplexMatrix& m) {
  return std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) - 1.0);
}

double phase_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

bool same_ray(const JonesVector& a, const JonesVector& b, double tol) {
  return std::abs(std::abs(overlap(a, b)) - 1.0) < tol;
}

TEST(Waveplate, HalfPlateAtZero) {
  const ComplexMatrix m = waveplate_matrix({RetarderKind::kHalf, 0.0});
  EXPECT_LT(max_abs_diff(m, ComplexMatrix{{-kI, 0.0}, {0.0, kI}}), kTight);
}

TEST(Waveplate, HalfPlateAt22_5IsHadamardTimesMinusI) {
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix m = waveplate_matrix({RetarderKind::kHalf, kPi / 8.0});
  EXPECT_LT(max_abs_diff(m, ComplexMatrix{{-kI * r, -kI * r}, {-kI * r, kI * r}}), kTight);
}

TEST(Waveplate, QuarterPlateAt45MakesRightCircular) {
  const JonesVector out = apply(waveplate_matrix({RetarderKind::kQuarter, kPi / 4.0}), JonesVector::horizontal());
  EXPECT_TRUE(same_ray(out, JonesVector::right(), kTight));
  const Vec3 s = stokes(out);
  EXPECT_NEAR(s.z, -1.0, kTight);
}

TEST(Waveplate, AlwaysSpecialUnitary) {
  Xoshiro256 rng(3);
  for (int k = 0; k < 100; ++k) {
    const double axis = 2.0 * kPi * rng.uniform();
    for (auto kind : {RetarderKind::kHalf, RetarderKind::kQuarter}) {
      const ComplexMatrix m = partial_retarder({kind, axis}, rng.uniform());
      EXPECT_TRUE(is_unitary(m, Tolerance(kTight)));
      EXPECT_LT(det_distance_from_one(m), kTight);
    }
  }
  EXPECT_THROW(waveplate_matrix({RetarderKind::kHalf, std::nan("")}), DomainError);
}

TEST(Waveplate, HalfPlatePairsAndConjugateQuarterPlates) {
  Xoshiro256 rng(4);
  for (int k = 0; k < 100; ++k) {
    const RetarderSpec h{RetarderKind::kHalf, 2.0 * kPi * rng.uniform()};
    EXPECT_TRUE(equal_up_to_global_phase(waveplate_matrix(h) * waveplate_matrix(h), ComplexMatrix::identity(2)));
  }
  const ComplexMatrix qq = waveplate_matrix({RetarderKind::kQuarter, -kPi / 4.0}) *
                           waveplate_matrix({RetarderKind::kQuarter, kPi / 4.0});
  EXPECT_TRUE(equal_up_to_global_phase(qq, ComplexMatrix::identity(2)));
}

TEST(Stokes, NamedStates) {
  auto near = [](Vec3 a, Vec3 b) { return norm(a - b) < kTight; };
  EXPECT_TRUE(near(stokes(JonesVector::horizontal()), {1, 0, 0}));
  EXPECT_TRUE(near(stokes(JonesVector::vertical()), {-1, 0, 0}));
  EXPECT_TRUE(near(stokes(JonesVector::diagonal()), {0, 1, 0}));
  EXPECT_TRUE(near(stokes(JonesVector::antidiagonal()), {0, -1, 0}));
  EXPECT_TRUE(near(stokes(JonesVector::right()), {0, 0, -1}));
  EXPECT_TRUE(near(stokes(JonesVector::left()), {0, 0, 1}));
  // Linear polarization at angle a sits at longitude 2a.
  EXPECT_TRUE(near(stokes(JonesVector::linear(0.3)), equator_point(0.6)));
}

TEST(Stokes, RoundTrip) {
  Xoshiro256 rng(8);
  for (int k = 0; k < 200; ++k) {
    const JonesVector j = JonesVector{Complex(rng.normal(), rng.normal()), Complex(rng.normal(), rng.normal())}.normalized();
    EXPECT_TRUE(same_ray(jones_from_stokes(stokes(j)), j, 1e-12));
  }
}

// ---- solid angles -------------------------------------------------------------

TEST(SolidAngle, Octant) {
  EXPECT_NEAR(solid_angle({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), kPi / 2.0, kTight);
  EXPECT_NEAR(solid_angle({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), -kPi / 2.0, kTight);
}

TEST(SolidAngle, OutAndBackIsZero) {
  const Vec3 a{1, 0, 0}, b = normalized(Vec3{1, 1, 0}), c{0, 1, 0};
  EXPECT_NEAR(solid_angle({a, b, c, b}), 0.0, kTight);
}

TEST(SolidAngle, Hemisphere) {
  std::vector<Vec3> equator;
  for (int k = 0; k < 8; ++k) equator.push_back(equator_point(2.0 * kPi * k / 8.0));
  EXPECT_NEAR(solid_angle(equator), 2.0 * kPi, 1e-12);
}

// Gauss-Bonnet on a small circle of colatitude t: area 2π(1 - cos t).
TEST(SolidAngle, SmallCircleConverges) {
  const double t = 0.7;
  for (int n : {64, 512}) {
    std::vector<Vec3> ring;
    for (int k = 0; k < n; ++k) {
      const double phi = 2.0 * kPi * k / n;
      ring.push_back({std::sin(t) * std::cos(phi), std::sin(t) * std::sin(phi), std::cos(t)});
    }
    const double exact = 2.0 * kPi * (1.0 - std::cos(t));
    EXPECT_NEAR(solid_angle(ring), exact, 10.0 / (n * n)) << n;
  }
}

TEST(SolidAngle, Lune) {
  for (int k = 1; k <= 16; ++k) {
    const double alpha = (kPi / 4.0) * k / 17.0;
    EXPECT_NEAR(solid_angle(lune_vertices(alpha)), 8.0 * alpha, 1e-9);
  }
}

TEST(SolidAngle, Errors) {
  EXPECT_THROW(solid_angle({{1, 0, 0}, {0, 1, 0}}), DegenerateError);
  EXPECT_THROW(solid_angle({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}}), DegenerateError);
  EXPECT_THROW(solid_angle({{1, 0, 0}, {1, 0, 0}, {0, 1, 0}}), DegenerateError);
}

// ---- Pancharatnam phase ---------------------------------------------------------

TEST(Pancharatnam, ConstantPathIsZero) {
  SpherePath p;
  for (int k = 0; k < 5; ++k) p.push(JonesVector::diagonal());
  EXPECT_NEAR(pancharatnam_phase(p, true), 0.0, kTight);
}

// With R at s3 = -1, H→D→R runs clockwise seen from outside (Ω = -π/2), so it
// picks up +π/4; the counter-clockwise octant H→D→L gives -π/4.
TEST(Pancharatnam, OctantLoops) {
  const Vec3 h = stokes(JonesVector::horizontal()), d = stokes(JonesVector::diagonal());
  const auto via_l = geodesic_path({h, d, stokes(JonesVector::left())}, 64, true);
  const auto via_r = geodesic_path({h, d, stokes(JonesVector::right())}, 64, true);
  EXPECT_NEAR(pancharatnam_phase(via_l, true), -kPi / 4.0, 1e-12);
  EXPECT_NEAR(pancharatnam_phase(via_r, true), kPi / 4.0, 1e-12);
}

TEST(Pancharatnam, LuneLoopGivesMinusFourAlpha) {
  for (double alpha : {0.05, 0.2, 0.5, 0.75}) {
    EXPECT_NEAR(phase_distance(lune_report(alpha, 32).pancharatnam, -4.0 * alpha), 0.0, 1e-9);
  }
}

TEST(Pancharatnam, GaugeInvariant) {
  const Vec3 h{1, 0, 0}, d{0, 1, 0}, l{0, 0, 1};
  SpherePath p = geodesic_path({h, d, l}, 16, true);
  Xoshiro256 rng(2);
  const double before = pancharatnam_phase(p, true);
  for (auto& s : p.states) {
    const Complex g = std::polar(1.0, 2.0 * kPi * rng.uniform());
    s = JonesVector{g * s.h, g * s.v};
  }
  EXPECT_NEAR(pancharatnam_phase(p, true), before, 1e-12);
}

TEST(Pancharatnam, OrthogonalStepIsDegenerate) {
  SpherePath p;
  p.push(JonesVector::horizontal());
  p.push(JonesVector::vertical());
  EXPECT_THROW(pancharatnam_phase(p, false), DegenerateError);
}

// Closed geodesic loops: -Ω/2 agreement, refined by doubling the steps.
TEST(Pancharatnam, MatchesMinusHalfSolidAngle) {
  Xoshiro256 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec3> v;
    const double base = 2.0 * kPi * rng.uniform();
    for (int k = 0; k < 3; ++k) {
      const double lon = base + 2.0 * kPi * k / 3.0 + 0.3 * rng.uniform();
      const double lat = 0.2 + 0.9 * rng.uniform();
      v.push_back({std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)});
    }
    const double omega = solid_angle(v);
    double prev = 1e9;
    for (std::size_t steps : {8u, 16u, 32u}) {
      const double err = phase_distance(pancharatnam_phase(geodesic_path(v, steps, true), true), -omega / 2.0);
      EXPECT_LE(err, std::max(prev / 2.0, 1e-12));
      prev = err;
    }
    EXPECT_LT(prev, 1e-9);
  }
}

// ---- parallel transport ---------------------------------------------------------

TEST(ParallelTransport, ConstantPathIsZero) {
  SpherePath p;
  for (int k = 0; k < 4; ++k) p.push(JonesVector::right());
  EXPECT_EQ(parallel_transport_residual(p), 0.0);
}

TEST(ParallelTransport, RailTraversalsStayTransported) {
  for (Rail r : kAllRails) {
    for (std::size_t steps : {64u, 256u, 1024u}) {
      const auto path = trace_path(rail_preset(r), rail_input(r), 0.37, steps);
      EXPECT_LT(parallel_transport_residual(path), 1e-12) << rail_name(r) << " steps " << steps;
    }
  }
}

TEST(ParallelTransport, EigenstateAccumulatesDynamicalPhase) {
  const RailProgram hwp{{Plate{{RetarderKind::kHalf, 0.0}, false}}};
  double prev = 0.0;
  for (std::size_t steps : {64u, 256u, 1024u}) {
    const double res = parallel_transport_residual(trace_path(hwp, JonesVector::horizontal(), 0.0, steps));
    EXPECT_GT(res, 0.99);
    if (prev > 0.0) EXPECT_NEAR(res, prev, 1e-3);
    prev = res;
  }
}

// ---- rail programs ----------------------------------------------------------------

TEST(Rails, NamesRoundTrip) {
  for (Rail r : kAllRails) EXPECT_EQ(parse_rail(rail_name(r)), r);
  EXPECT_FALSE(parse_rail("rail-side").has_value());
}

TEST(Rails, PresetsAreFoundBySearch) {
  for (Rail r : kAllRails) {
    const auto signs = search_rail_signs(r);
    ASSERT_TRUE(signs.has_value()) << rail_name(r);
    EXPECT_EQ(*signs, preset_signs(r));
  }
}

TEST(Rails, CompositesMatchTargetsWithOneGlobalPhase) {
  for (Rail r : kAllRails) {
    const auto prog = rail_preset(r);
    const ComplexMatrix u0 = rail_composite(prog, 0.0);
    const ComplexMatrix t0 = rail_target(r, 0.0);
    const Complex g0 = std::abs(t0(0, 1)) > 0.0 ? u0(0, 1) / t0(0, 1) : u0(0, 0) / t0(0, 0);
    for (int k = 0; k < 32; ++k) {
      const double alpha = 2.0 * kPi * k / 32.0;
      ComplexMatrix target = rail_target(r, alpha);
      target *= g0;
      EXPECT_LT(max_abs_diff(rail_composite(prog, alpha), target), 1e-12) << rail_name(r) << " alpha " << alpha;
    }
  }
  // Top rail is exactly iX and middle rail -I with these presets.
  EXPECT_LT(max_abs_diff(rail_composite(rail_preset(Rail::kTop), 0.4), rail_target(Rail::kTop, 0.4)), 1e-12);
  EXPECT_LT(max_abs_diff(rail_composite(rail_preset(Rail::kMiddle), 0.4), ComplexMatrix{{-1.0, 0.0}, {0.0, -1.0}}),
            1e-12);
}

TEST(Rails, BottomOffDiagonalPhaseTracksFourAlpha) {
  const auto prog = rail_preset(Rail::kBottom);
  Xoshiro256 rng(6);
  for (int k = 0; k < 50; ++k) {
    const double a = 2.0 * kPi * rng.uniform(), b = 2.0 * kPi * rng.uniform();
    const ComplexMatrix rel = rail_composite(prog, a) * rail_composite(prog, b).adjoint();
    // rel = diag(e^{-i4(a-b)}, e^{i4(a-b)}) exactly.
    EXPECT_NEAR(phase_distance(std::arg(rel(1, 1)), 4.0 * (a - b)), 0.0, 1e-12);
    EXPECT_NEAR(phase_distance(std::arg(rel(0, 0)), -4.0 * (a - b)), 0.0, 1e-12);
    EXPECT_LT(std::abs(rel(0, 1)), 1e-12);
  }
}

TEST(Rails, EmptyProgram) {
  EXPECT_THROW(rail_composite(RailProgram{}, 0.0), DomainError);
  const SpherePath p = trace_path(RailProgram{}, JonesVector::diagonal(), 0.0, 10);
  EXPECT_EQ(p.size(), 1u);
}

TEST(Rails, BottomTraversalWaypoints) {
  for (double alpha : {0.0, 0.1, 0.6, 2.0}) {
    const auto way = traversal_waypoints(rail_preset(Rail::kBottom), JonesVector::vertical(), alpha);
    const JonesVector p = half_plate_crossing(alpha);
    const std::vector<JonesVector> expected{JonesVector::vertical(), JonesVector::right(), p,
                                            JonesVector::left(),     JonesVector::horizontal(), JonesVector::right(),
                                            p,                       JonesVector::left(),       JonesVector::horizontal()};
    ASSERT_EQ(way.size(), expected.size());
    for (std::size_t k = 0; k < way.size(); ++k) {
      EXPECT_LT(norm(stokes(way[k]) - stokes(expected[k])), 1e-9) << "alpha " << alpha << " waypoint " << k;
    }
  }
}

TEST(Rails, EqualArcLengthsAndAntipodalEndpoints) {
  for (int k = 0; k < 16; ++k) {
    const double alpha = 2.0 * kPi * k / 16.0;
    const double bottom = path_arc_length(trace_path(rail_preset(Rail::kBottom), JonesVector::vertical(), alpha, 64));
    for (Rail r : {Rail::kTop, Rail::kMiddle}) {
      EXPECT_NEAR(path_arc_length(trace_path(rail_preset(r), rail_input(r), alpha, 64)), bottom, 1e-9);
    }
    for (Rail r : {Rail::kTop, Rail::kBottom}) {
      const auto path = trace_path(rail_preset(r), rail_input(r), alpha, 16);
      EXPECT_NEAR(dot(path.points.front(), path.points.back()), -1.0, 1e-12);
    }
  }
}

// ---- geometric phase reports ------------------------------------------------------

TEST(GeometricPhaseReport, BottomRail) {
  for (double alpha : {0.05, 0.3, 0.7}) {
    const auto rep = geometric_phase_report(rail_preset(Rail::kBottom), JonesVector::vertical(), alpha);
    EXPECT_TRUE(rep.orthogonal_endpoints);
    EXPECT_NEAR(phase_distance(rep.pancharatnam, -kPi / 2.0 - 4.0 * alpha), 0.0, 1e-9);
    EXPECT_NEAR(phase_distance(rep.pancharatnam, -rep.solid_angle / 2.0), 0.0, 1e-9);
    EXPECT_LT(rep.dynamical_residual, 1e-12);
  }
}

TEST(GeometricPhaseReport, BottomRailDifferenceIsMinusFourDelta) {
  const auto prog = rail_preset(Rail::kBottom);
  for (double alpha : {0.0, 0.2, 1.1}) {
    const double delta = 0.13;
    const double a = geometric_phase_report(prog, JonesVector::vertical(), alpha, 64).pancharatnam;
    const double b = geometric_phase_report(prog, JonesVector::vertical(), alpha + delta, 64).pancharatnam;
    EXPECT_NEAR(phase_distance(b - a, -4.0 * delta), 0.0, 1e-9);
  }
}

TEST(GeometricPhaseReport, TopRailIsAlphaIndependent) {
  const auto prog = rail_preset(Rail::kTop);
  const auto ref = geometric_phase_report(prog, JonesVector::horizontal(), 0.0, 64);
  EXPECT_NEAR(ref.pancharatnam, kPi / 2.0, 1e-9);
  for (int k = 1; k < 16; ++k) {
    const auto rep = geometric_phase_report(prog, JonesVector::horizontal(), 2.0 * kPi * k / 16.0, 64);
    EXPECT_NEAR(phase_distance(rep.pancharatnam, ref.pancharatnam), 0.0, 1e-9);
    const double d = std::fmod(std::abs(rep.solid_angle - ref.solid_angle), 4.0 * kPi);
    EXPECT_NEAR(std::min(d, 4.0 * kPi - d), 0.0, 1e-8);
  }
}

// The middle rail retraces its path but the quarter-plate loops on the way
// enclose a full hemisphere, so its composite is -I: phase π, Ω = 2π.
TEST(GeometricPhaseReport, MiddleRail) {
  for (double alpha : {0.0, 0.4}) {
    const auto rep = geometric_phase_report(rail_preset(Rail::kMiddle), JonesVector::horizontal(), alpha, 64);
    EXPECT_FALSE(rep.orthogonal_endpoints);
    EXPECT_NEAR(phase_distance(rep.pancharatnam, kPi), 0.0, 1e-9);
    EXPECT_NEAR(rep.solid_angle, 2.0 * kPi, 1e-9);
  }
}

TEST(LuneReport, DegenerateAtZero) {
  const auto rep = lune_report(0.0, 16);
  EXPECT_NEAR(rep.solid_angle, 0.0, 1e-12);
  EXPECT_NEAR(rep.pancharatnam, 0.0, 1e-12);
}

}  // namespace
}  // namespace hadamard
