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

#ifndef HADAMARD_FOCK_HPP_
#define HADAMARD_FOCK_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/complex_matrix.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/permanent.hpp"

namespace hadamard {

using Occupation = std::vector<int>;

struct FockState {
  Occupation occupations;

  FockState() = default;
  explicit FockState(Occupation occ) : occupations(std::move(occ)) {
    for (int n : occupations)
      if (n < 0) throw DomainError("FockState: negative occupation");
  }

  std::size_t modes() const { return occupations.size(); }
  int photons() const { return std::accumulate(occupations.begin(), occupations.end(), 0); }
};

// Probabilities keyed by output occupation pattern, in lexicographic order.
struct OutputDistribution {
  std::map<Occupation, double> entries;

  double probability(const Occupation& pattern) const {
    const auto it = entries.find(pattern);
    return it == entries.end() ? 0.0 : it->second;
  }
  double total() const {
    double s = 0.0;
    for (const auto& [pattern, p] : entries) s += p;
    return s;
  }
};

// Pairwise wavepacket overlap x in [0, 1]; 1 = indistinguishable photons.
struct IndistinguishabilityModel {
  double x = 1.0;

  constexpr IndistinguishabilityModel() = default;
  constexpr explicit IndistinguishabilityModel(double overlap) : x(overlap) {
    if (!(overlap >= 0.0 && overlap <= 1.0)) throw DomainError("indistinguishability must lie in [0, 1]");
  }
};

inline constexpr int kMaxPhotons = 6;

// All occupation patterns of `photons` photons over `modes` modes, ascending
// lexicographic order.
inline std::vector<Occupation> enumerate_patterns(std::size_t modes, int photons) {
  std::vector<Occupation> out;
  Occupation cur(modes, 0);
  auto rec = [&](auto&& self, std::size_t mode, int left) -> void {
    if (mode + 1 == modes) {
      cur[mode] = left;
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[mode] = k;
      self(self, mode + 1, left - k);
    }
  };
  if (modes > 0) rec(rec, 0, photons);
  return out;
}

namespace detail {

inline double factorial_product(const Occupation& occ) {
  double p = 1.0;
  for (int n : occ)
    for (int k = 2; k <= n; ++k) p *= k;
  return p;
}

}  // namespace detail

/// Output distribution of a Fock input through U:
///   P(S -> T) = |perm(U_{T,S})|² / (Π s_i! Π t_j!),
/// U_{T,S} repeating output row j t_j times and input column i s_i times.
inline OutputDistribution evolve(const ComplexMatrix& u, const FockState& input) {
  if (!u.is_square() || u.empty()) throw ShapeError("evolve: unitary must be square");
  if (input.modes() != u.rows()) throw ShapeError("evolve: input has " + std::to_string(input.modes()) +
                                                  " modes, unitary has " + std::to_string(u.rows()));
  const int n = input.photons();
  if (n > kMaxPhotons) {
    throw SizeError("evolve: " + std::to_string(n) + " photons exceeds cap of " + std::to_string(kMaxPhotons));
  }
  if (!is_unitary(u)) throw DomainError("evolve: matrix is not unitary");

  OutputDistribution dist;
  const double in_fact = detail::factorial_product(input.occupations);
  for (auto& pattern : enumerate_patterns(u.rows(), n)) {
    const Complex amp = permanent(submatrix_with_repetition(u, pattern, input.occupations));
    const double p = std::norm(amp) / (in_fact * detail::factorial_product(pattern));
    dist.entries.emplace(std::move(pattern), p);
  }
  return dist;
}

/// Coincidence probability for one photon in each of modes k, l, detected at
/// distinct outputs i, j, with overlap x:
///   x·|U_ik U_jl + U_il U_jk|² + (1-x)·(|U_ik U_jl|² + |U_il U_jk|²).
inline double coincidence_probability(const ComplexMatrix& u, std::pair<std::size_t, std::size_t> in_modes,
                                      std::pair<std::size_t, std::size_t> out_modes,
                                      IndistinguishabilityModel model = IndistinguishabilityModel{}) {
  const auto [k, l] = in_modes;
  const auto [i, j] = out_modes;
  if (k == l) throw DomainError("coincidence_probability: input modes must differ");
  if (i == j) throw DomainError("coincidence_probability: output modes must differ (use evolve for bunching)");
  if (std::max(k, l) >= u.cols() || std::max(i, j) >= u.rows()) throw ShapeError("coincidence_probability: mode out of range");
  const Complex direct = u(i, k) * u(j, l);
  const Complex exchange = u(i, l) * u(j, k);
  return model.x * std::norm(direct + exchange) + (1.0 - model.x) * (std::norm(direct) + std::norm(exchange));
}

using ConditionalTable = std::map<std::size_t, std::map<std::size_t, double>>;

/// Pr(j | i) = P(i, j) / Σ_{j'≠i} P(i, j'), conditioned on a coincidence at
/// two distinct detectors, for every detector i.
inline ConditionalTable conditional_coincidences(const ComplexMatrix& u, std::pair<std::size_t, std::size_t> in_modes,
                                                 IndistinguishabilityModel model = IndistinguishabilityModel{}) {
  const std::size_t m = u.rows();
  ConditionalTable table;
  for (std::size_t i = 0; i < m; ++i) {
    double denom = 0.0;
    std::map<std::size_t, double> row;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      row[j] = coincidence_probability(u, in_modes, {i, j}, model);
      denom += row[j];
    }
    if (!(denom > 0.0)) {
      throw NumericalError("conditional_coincidences: no coincidences involve detector " + std::to_string(i));
    }
    for (auto& [j, p] : row) p /= denom;
    table[i] = std::move(row);
  }
  return table;
}

// |U_{j, input}|² for every output j.
inline std::vector<double> singles_distribution(const ComplexMatrix& u, std::size_t input_mode) {
  if (input_mode >= u.cols()) throw ShapeError("singles_distribution: input mode out of range");
  std::vector<double> p(u.rows());
  for (std::size_t j = 0; j < u.rows(); ++j) p[j] = std::norm(u(j, input_mode));
  return p;
}

/// HOM-dip visibility of one coincidence channel: (P_classical - P(x)) /
/// P_classical, P_classical the x = 0 value. Negative for bunching-enhanced
/// channels.
inline double hom_visibility(const ComplexMatrix& u, std::pair<std::size_t, std::size_t> in_modes,
                             std::pair<std::size_t, std::size_t> out_modes, IndistinguishabilityModel model) {
  const double classical = coincidence_probability(u, in_modes, out_modes, IndistinguishabilityModel{0.0});
  if (!(classical > 0.0)) throw NumericalError("hom_visibility: zero classical baseline");
  return (classical - coincidence_probability(u, in_modes, out_modes, model)) / classical;
}

}  // namespace hadamard

#endif  // HADAMARD_FOCK_HPP_
