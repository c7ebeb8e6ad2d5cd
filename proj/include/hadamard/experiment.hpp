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

#ifndef HADAMARD_EXPERIMENT_HPP_
#define HADAMARD_EXPERIMENT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/complex_matrix.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/fock.hpp"
#include "hadamard/physical.hpp"
#include "hadamard/random.hpp"

namespace hadamard {

inline constexpr std::size_t kDetectors = 4;
inline constexpr std::size_t kPairCount = 6;

// Detector pairs in output order: 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, kPairCount> kDetectorPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

// Pairs that carry the θ′ fringes for inputs |0>,|1>, and the two pairs whose
// coincidences are suppressed for every θ′.
inline constexpr std::array<std::size_t, 4> kLivePairs{0, 2, 3, 5};
inline constexpr std::array<std::size_t, 2> kSuppressedPairs{1, 4};

inline std::string pair_label(std::size_t pair) {
  const auto [i, j] = kDetectorPairs.at(pair);
  return std::to_string(i) + std::to_string(j);
}

// Two-photon input modes and the two heralded one-photon inputs.
inline constexpr std::pair<std::size_t, std::size_t> kPairInput{0, 1};
inline constexpr std::array<std::size_t, 2> kSinglesInputs{0, 1};

// Detector efficiency drifting with the sweep: η(α) = η·(1 + depth·cos(4α + phase)).
struct EfficiencyDrift {
  double depth = 0.0;
  double phase = 0.0;
};

inline std::vector<double> uniform_alpha_grid(std::size_t count, double start = 0.0, double stop = 2.0 * kPi) {
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k)
    grid[k] = start + (stop - start) * static_cast<double>(k) / static_cast<double>(count);
  return grid;
}

struct SweepConfig {
  std::vector<double> alpha_grid = uniform_alpha_grid(256);
  double pair_rate = 1e5;     // expected two-photon events per setting
  double singles_rate = 4400.0;  // expected heralded single photons per setting and input
  std::array<double, kDetectors> efficiencies{1.0, 1.0, 1.0, 1.0};
  double accidental_rate = 0.0;  // expected accidentals per pair per setting
  IndistinguishabilityModel x{1.0};
  std::uint64_t seed = 1;
  std::array<EfficiencyDrift, kDetectors> drift{};

  void validate() const {
    if (alpha_grid.empty()) throw DomainError("sweep: alpha grid is empty");
    for (double a : alpha_grid)
      if (!std::isfinite(a)) throw DomainError("sweep: alpha grid has a non-finite value");
    if (!(pair_rate >= 0.0) || !std::isfinite(pair_rate)) throw DomainError("sweep: pair_rate must be >= 0");
    if (!(singles_rate >= 0.0) || !std::isfinite(singles_rate)) throw DomainError("sweep: singles_rate must be >= 0");
    if (!(accidental_rate >= 0.0) || !std::isfinite(accidental_rate)) {
      throw DomainError("sweep: accidental_rate must be >= 0");
    }
    for (double e : efficiencies)
      if (!(e > 0.0 && e <= 1.0)) throw DomainError("sweep: efficiencies must lie in (0, 1]");
    for (const auto& d : drift)
      if (!(std::abs(d.depth) < 1.0) || !std::isfinite(d.phase)) {
        throw DomainError("sweep: drift depth must lie in (-1, 1) and phase be finite");
      }
  }

  double efficiency(std::size_t detector, double alpha) const {
    const auto& d = drift[detector];
    const double eta = efficiencies[detector] * (1.0 + d.depth * std::cos(4.0 * alpha + d.phase));
    return std::clamp(eta, 0.0, 1.0);
  }
};

struct CountRecord {
  double alpha = 0.0;
  double theta_prime = 0.0;
  std::array<double, kPairCount> pair_counts{};
  // [input][detector] for the one-photon inputs |0> and |1>.
  std::array<std::array<double, kDetectors>, 2> singles_counts{};
  std::array<double, kPairCount> accidentals_estimate{};
};

/// Poisson counts for every α of the grid. For pair (i, j):
///   λ_ij = pair_rate·η_i(α)·η_j(α)·P(i, j | physical_unitary(α), x) + accidental_rate;
/// singles for input k at detector j: λ = singles_rate·η_j(α)·|U_jk|².
/// Grid point p draws from stream (seed, p) in a fixed order (six pairs, then
/// input 0 detectors 0..3, then input 1), so results do not depend on how
/// points are scheduled.
inline std::vector<CountRecord> simulate_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<CountRecord> out;
  out.reserve(config.alpha_grid.size());
  for (std::size_t p = 0; p < config.alpha_grid.size(); ++p) {
    const double alpha = config.alpha_grid[p];
    const ComplexMatrix u = physical_unitary(alpha);
    Xoshiro256 rng(config.seed, p);
    CountRecord rec;
    rec.alpha = alpha;
    rec.theta_prime = theta_prime(alpha);
    std::array<double, kDetectors> eta{};
    for (std::size_t d = 0; d < kDetectors; ++d) eta[d] = config.efficiency(d, alpha);
    for (std::size_t k = 0; k < kPairCount; ++k) {
      const auto [i, j] = kDetectorPairs[k];
      const double lambda =
          config.pair_rate * eta[i] * eta[j] * coincidence_probability(u, kPairInput, {i, j}, config.x) +
          config.accidental_rate;
      rec.pair_counts[k] = static_cast<double>(rng.poisson(lambda));
      rec.accidentals_estimate[k] = config.accidental_rate;
    }
    for (std::size_t s = 0; s < kSinglesInputs.size(); ++s) {
      const auto probs = singles_distribution(u, kSinglesInputs[s]);
      for (std::size_t d = 0; d < kDetectors; ++d) {
        rec.singles_counts[s][d] = static_cast<double>(rng.poisson(config.singles_rate * eta[d] * probs[d]));
      }
    }
    out.push_back(rec);
  }
  return out;
}

// Pair counts reduced by `rate`, floored at zero.
inline std::vector<CountRecord> subtract_accidentals(std::vector<CountRecord> records, double rate) {
  if (!(rate >= 0.0)) throw DomainError("subtract_accidentals: rate must be >= 0");
  for (auto& r : records)
    for (auto& c : r.pair_counts) c = std::max(0.0, c - rate);
  return records;
}

struct FitResult {
  double offset = 0.0;      // A
  double amplitude = 0.0;   // |B|
  double phase0 = 0.0;      // φ in (-π, π]
  double visibility = 0.0;  // |B|/A clamped to [0, 1]
  double amplitude_fraction = 0.0;  // |B|/A, unclamped
  double rms_residual = 0.0;
  // One-sigma noise level of amplitude_fraction implied by the residuals.
  double fraction_sigma = 0.0;
};

struct FringePoint {
  double theta = 0.0;
  double value = 0.0;
};

/// Least-squares fit of y = A + B·cos(θ + φ), solved linearly on the basis
/// {1, cos θ, sin θ}: y = A + c·cos θ + s·sin θ, B = hypot(c, s),
/// φ = atan2(-s, c).
///
/// Needs at least 4 points whose phases leave no circular gap of π or more.
/// Throws NumericalError for a singular design or a non-positive offset
/// (visibility undefined).
inline FitResult fit_fringe(const std::vector<FringePoint>& points) {
  if (points.size() < 4) throw NumericalError("fit_fringe: need at least 4 points");
  std::vector<double> phases;
  phases.reserve(points.size());
  for (const auto& p : points) {
    if (!std::isfinite(p.theta) || !std::isfinite(p.value)) throw NumericalError("fit_fringe: non-finite data");
    double t = std::fmod(p.theta, 2.0 * kPi);
    if (t < 0.0) t += 2.0 * kPi;
    phases.push_back(t);
  }
  std::sort(phases.begin(), phases.end());
  double gap = phases.front() + 2.0 * kPi - phases.back();
  for (std::size_t k = 1; k < phases.size(); ++k) gap = std::max(gap, phases[k] - phases[k - 1]);
  if (gap >= kPi) throw NumericalError("fit_fringe: sample phases do not span more than pi");

  // Normal equations G·β = r.
  std::array<std::array<double, 4>, 3> g{};
  for (const auto& p : points) {
    const std::array<double, 3> basis{1.0, std::cos(p.theta), std::sin(p.theta)};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) g[i][j] += basis[i] * basis[j];
      g[i][3] += basis[i] * p.value;
    }
  }
  const double scale = static_cast<double>(points.size());
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 3; ++r)
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    if (std::abs(g[piv][col]) < 1e-10 * scale) throw NumericalError("fit_fringe: singular design matrix");
    std::swap(g[col], g[piv]);
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = g[r][col] / g[col][col];
      for (std::size_t c = col; c < 4; ++c) g[r][c] -= f * g[col][c];
    }
  }
  const double a = g[0][3] / g[0][0];
  const double c = g[1][3] / g[1][1];
  const double s = g[2][3] / g[2][2];

  FitResult fit;
  fit.offset = a;
  fit.amplitude = std::hypot(c, s);
  fit.phase0 = wrap_angle(std::atan2(-s, c));
  double ss = 0.0;
  for (const auto& p : points) {
    const double r = p.value - (a + c * std::cos(p.theta) + s * std::sin(p.theta));
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / scale);
  if (!(a > 0.0)) throw NumericalError("fit_fringe: fitted offset is not positive; visibility undefined");
  fit.amplitude_fraction = fit.amplitude / a;
  fit.visibility = std::clamp(fit.amplitude_fraction, 0.0, 1.0);
  fit.fraction_sigma = fit.rms_residual * std::sqrt(2.0 / scale) / a;
  return fit;
}

// Standard deviation of the trace about its own mean (n - 1 normalization),
// divided by the mean.
inline double relative_standard_error(const std::vector<double>& values) {
  if (values.size() < 2) throw NumericalError("relative_standard_error: need at least 2 values");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (!(mean > 0.0)) throw NumericalError("relative_standard_error: mean is not positive");
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size() - 1)) / mean;
}

// (θ′, counts) of one detector pair across the sweep.
inline std::vector<FringePoint> pair_series(const std::vector<CountRecord>& records, std::size_t pair) {
  std::vector<FringePoint> pts;
  pts.reserve(records.size());
  for (const auto& r : records) pts.push_back({r.theta_prime, r.pair_counts.at(pair)});
  return pts;
}

// (θ′, counts) of one singles trace.
inline std::vector<FringePoint> singles_series(const std::vector<CountRecord>& records, std::size_t input,
                                               std::size_t detector) {
  std::vector<FringePoint> pts;
  pts.reserve(records.size());
  for (const auto& r : records) pts.push_back({r.theta_prime, r.singles_counts.at(input).at(detector)});
  return pts;
}

/// Fitted |B|/A of a nominally suppressed pair's counts: the residual θ′
/// response the two-photon suppression leaves behind.
inline double residual_phase_amplitude(const std::vector<FringePoint>& suppressed_pair_points) {
  return fit_fringe(suppressed_pair_points).amplitude_fraction;
}

// Like fit_fringe, but an all-zero series (a fully suppressed pair with no
// accidentals) reports a zero fit with visibility 0 instead of failing.
inline FitResult fit_fringe_or_empty(const std::vector<FringePoint>& points) {
  const bool all_zero =
      std::all_of(points.begin(), points.end(), [](const FringePoint& p) { return p.value == 0.0; });
  if (all_zero && points.size() >= 4) return FitResult{};
  return fit_fringe(points);
}

// Per-pair fits after accidental subtraction.
inline std::array<FitResult, kPairCount> fit_all_pairs(const std::vector<CountRecord>& records, double accidental_rate) {
  const auto cleaned = subtract_accidentals(records, accidental_rate);
  std::array<FitResult, kPairCount> fits;
  for (std::size_t k = 0; k < kPairCount; ++k) fits[k] = fit_fringe_or_empty(pair_series(cleaned, k));
  return fits;
}

inline double mean_live_visibility(const std::array<FitResult, kPairCount>& fits) {
  double s = 0.0;
  for (std::size_t k : kLivePairs) s += fits[k].visibility;
  return s / static_cast<double>(kLivePairs.size());
}

}  // namespace hadamard

#endif  // HADAMARD_EXPERIMENT_HPP_
