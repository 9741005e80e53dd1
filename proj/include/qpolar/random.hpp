// Copyright 2026 The qpolar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "qpolar/channel.hpp"

namespace qpolar {

/// Independent generator for item `index` of a run seeded with `seed`.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform on the probability simplex.
inline PauliProbVec random_pauli_vec(std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  PauliProbVec p{};
  double s = 0;
  for (auto& v : p) s += (v = e(rng));
  for (auto& v : p) v /= s;
  return p;
}

/// Random Pauli vector with identity weight at least `min_identity`.
inline PauliProbVec random_noisy_identity(std::mt19937_64& rng, double min_identity) {
  auto p = random_pauli_vec(rng);
  for (auto& v : p) v *= (1 - min_identity);
  p[0] += min_identity;
  return p;
}

/// Random mixture of the five subgroup-uniform Pauli channels: noiseless,
/// uniform on {I, X}, {I, Y}, {I, Z}, and fully depolarizing.
inline CmpChannel random_subgroup_mixture(std::mt19937_64& rng) {
  static constexpr std::array<PauliProbVec, 5> kTypes{{
      {1, 0, 0, 0}, {0.5, 0.5, 0, 0}, {0.5, 0, 0.5, 0}, {0.5, 0, 0, 0.5}, {0.25, 0.25, 0.25, 0.25}}};
  std::exponential_distribution<double> e(1.0);
  std::vector<CmpComponent> comps;
  double s = 0;
  for (const auto& t : kTypes) {
    double w = e(rng);
    s += w;
    comps.push_back({w, t});
  }
  for (auto& c : comps) c.weight /= s;
  CmpChannel ch(std::move(comps));
  ch.canonicalize();
  return ch;
}

}  // namespace qpolar
