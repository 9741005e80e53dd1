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

// Independent reference implementations used by the tests.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "qpolar/codec.hpp"
#include "qpolar/pauli.hpp"

namespace qpolar::oracle {

using Bits = std::array<unsigned, 2>;

inline Bits bits_of(PauliSymbol s) { return {s.hi(), s.lo()}; }
inline PauliSymbol of_bits(unsigned u1, unsigned u2) { return PauliSymbol(((u1 & 1u) << 1) | (u2 & 1u)); }

/// Closed forms A_i, B_j of the left-set permutations, inputs u = [u1,u2], v = [v1,v2].
inline PauliSymbol closed_a(unsigned i, PauliSymbol u, PauliSymbol v) {
  auto [u1, u2] = bits_of(u);
  auto [v1, v2] = bits_of(v);
  switch (i) {
    case 1: return of_bits(u1, u2 ^ v1 ^ v2);
    case 2: return of_bits(u2 ^ v1 ^ v2, u1);
    default: return of_bits(u1 ^ u2 ^ v1 ^ v2, u2 ^ v1 ^ v2);
  }
}

inline PauliSymbol closed_b(unsigned j, PauliSymbol u, PauliSymbol v) {
  auto [u1, u2] = bits_of(u);
  auto [v1, v2] = bits_of(v);
  switch (j) {
    case 1: return of_bits(u1 ^ v1, u1 ^ v2);
    case 2: return of_bits(u1 ^ v1, v1 ^ v2);
    default: return of_bits(v1 ^ v2, u1 ^ v2);
  }
}

/// Z_d of the good channel for row (i, j) of the table, given (Z1, Z2, Z3).
inline std::array<double, 3> table_good(unsigned i, unsigned j, const std::array<double, 3>& z) {
  const double z1 = z[0], z2 = z[1], z3 = z[2];
  static const std::array<std::array<int, 6>, 9> kRows{{
      // pairs of factor indices for Z1, Z2, Z3 (0 means the factor 1)
      {1, 1, 1, 2, 3, 0},
      {1, 1, 1, 3, 2, 0},
      {1, 3, 1, 2, 1, 0},
      {1, 2, 2, 2, 3, 0},
      {1, 2, 2, 3, 2, 0},
      {2, 3, 2, 2, 1, 0},
      {1, 3, 2, 3, 3, 0},
      {1, 3, 3, 3, 2, 0},
      {3, 3, 2, 3, 1, 0},
  }};
  const std::array<double, 4> f{1, z1, z2, z3};
  const auto& r = kRows[3 * (i - 1) + (j - 1)];
  return {f[r[0]] * f[r[1]], f[r[2]] * f[r[3]], f[r[4]] * f[r[5]]};
}

/// Exact block error probability of the SC decoder by enumerating all 4^N error patterns.
inline double exhaustive_block_error(const PolarCodeSpec& spec, const PauliProbVec& p) {
  const std::size_t len = spec.length();
  std::size_t total = 1;
  for (std::size_t i = 0; i < len; ++i) total *= 4;
  double err = 0;
  SymbolVector e(len);
  for (std::size_t code = 0; code < total; ++code) {
    double prob = 1;
    std::size_t c = code;
    for (std::size_t i = 0; i < len; ++i) {
      e[i] = PauliSymbol(static_cast<unsigned>(c & 3u));
      prob *= p[c & 3u];
      c >>= 2;
    }
    if (prob == 0) continue;
    if (!decode_error_pattern(spec, p, e).success) err += prob;
  }
  return err;
}

/// Brute-force MAP decision of u1 for N = 2 given u0, by summing over all error patterns.
inline PauliSymbol map_second_symbol(const PairPermutation& g, const PauliProbVec& p, PauliSymbol u0,
                                     PauliSymbol x0_obs, PauliSymbol x1_obs) {
  // Observation y = x + e; likelihood of hypothesis u1 is prod p[y_k - x_k].
  unsigned best = 0;
  double best_v = -1;
  for (unsigned u1 = 0; u1 < 4; ++u1) {
    auto [a, b] = g(u0, PauliSymbol(u1));
    double v = p[(x0_obs ^ a).value()] * p[(x1_obs ^ b).value()];
    if (v > best_v) best_v = v, best = u1;
  }
  return PauliSymbol(best);
}

}  // namespace qpolar::oracle
