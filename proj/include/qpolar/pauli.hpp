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
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace qpolar {

/// Element of the one-qubit Pauli group modulo phases.
///
/// Encoded as a 2-bit value [u1, u2] with u2 least significant:
/// I = 00, X = 01, Y = 10, Z = 11. The group product is XOR of encodings.
/// In terms of the usual (x, z) symplectic bits this is u1 = z, u2 = x ^ z,
/// a symplectic change of basis, so the standard form [[0,1],[1,0]] applies
/// to (u1, u2) directly.
class PauliSymbol {
 public:
  constexpr PauliSymbol() = default;
  constexpr explicit PauliSymbol(unsigned v) : v_(static_cast<std::uint8_t>(v)) {
    if (v > 3) throw std::out_of_range("PauliSymbol value must be in 0..3");
  }

  static constexpr PauliSymbol from_xz(unsigned x, unsigned z) {
    return PauliSymbol(((z & 1u) << 1) | ((x ^ z) & 1u));
  }

  constexpr unsigned value() const { return v_; }
  constexpr unsigned hi() const { return (v_ >> 1) & 1u; }  // u1
  constexpr unsigned lo() const { return v_ & 1u; }         // u2
  constexpr unsigned x_bit() const { return hi() ^ lo(); }
  constexpr unsigned z_bit() const { return hi(); }

  constexpr char name() const { return "IXYZ"[v_]; }

  friend constexpr PauliSymbol operator^(PauliSymbol a, PauliSymbol b) {
    return PauliSymbol(a.v_ ^ b.v_);
  }
  constexpr PauliSymbol& operator^=(PauliSymbol o) {
    v_ ^= o.v_;
    return *this;
  }
  friend constexpr bool operator==(PauliSymbol, PauliSymbol) = default;
  friend constexpr auto operator<=>(PauliSymbol, PauliSymbol) = default;

 private:
  std::uint8_t v_ = 0;
};

namespace pauli {
inline constexpr PauliSymbol I{0};
inline constexpr PauliSymbol X{1};
inline constexpr PauliSymbol Y{2};
inline constexpr PauliSymbol Z{3};
}  // namespace pauli

constexpr PauliSymbol pauli_add(PauliSymbol a, PauliSymbol b) { return a ^ b; }

/// Index of the pair (a, b) in 0..15; bit layout [u1 u2 v1 v2], u1 most significant.
constexpr unsigned pair_index(PauliSymbol a, PauliSymbol b) { return 4 * a.value() + b.value(); }

/// Bijection on P1 x P1, stored as a 16-entry lookup table over pair indices.
class PairPermutation {
 public:
  using Table = std::array<std::uint8_t, 16>;

  constexpr PairPermutation() : table_(identity_table()) {}
  explicit PairPermutation(const Table& table) : table_(table) {
    if (!is_bijective()) throw std::invalid_argument("PairPermutation table is not a bijection");
  }

  static PairPermutation identity() { return PairPermutation(); }

  /// Builds a permutation from its two component maps.
  template <class FA, class FB>
  static PairPermutation from_components(FA&& a, FB&& b) {
    Table t{};
    for (unsigned u = 0; u < 4; ++u)
      for (unsigned v = 0; v < 4; ++v)
        t[4 * u + v] = static_cast<std::uint8_t>(
            pair_index(a(PauliSymbol(u), PauliSymbol(v)), b(PauliSymbol(u), PauliSymbol(v))));
    return PairPermutation(t);
  }

  std::pair<PauliSymbol, PauliSymbol> operator()(PauliSymbol u, PauliSymbol v) const {
    unsigned img = table_[pair_index(u, v)];
    return {PauliSymbol(img >> 2), PauliSymbol(img & 3u)};
  }
  PauliSymbol a(PauliSymbol u, PauliSymbol v) const { return PauliSymbol(table_[pair_index(u, v)] >> 2); }
  PauliSymbol b(PauliSymbol u, PauliSymbol v) const { return PauliSymbol(table_[pair_index(u, v)] & 3u); }

  unsigned apply_index(unsigned idx) const { return table_[idx]; }
  const Table& table() const { return table_; }

  PairPermutation inverse() const {
    Table t{};
    for (unsigned i = 0; i < 16; ++i) t[table_[i]] = static_cast<std::uint8_t>(i);
    return PairPermutation(t);
  }

  /// (this * other)(x) = this(other(x)).
  PairPermutation operator*(const PairPermutation& other) const {
    Table t{};
    for (unsigned i = 0; i < 16; ++i) t[i] = table_[other.table_[i]];
    return PairPermutation(t);
  }

  bool is_bijective() const {
    std::uint32_t seen = 0;
    for (auto x : table_) {
      if (x > 15) return false;
      seen |= 1u << x;
    }
    return seen == 0xFFFFu;
  }

  /// GF(2)-linearity on 4-bit vectors: maps 0 to 0 and respects XOR.
  bool is_linear() const {
    if (table_[0] != 0) return false;
    for (unsigned x = 0; x < 16; ++x)
      for (unsigned y = 0; y < 16; ++y)
        if (table_[x ^ y] != (table_[x] ^ table_[y])) return false;
    return true;
  }

  friend bool operator==(const PairPermutation&, const PairPermutation&) = default;
  friend auto operator<=>(const PairPermutation&, const PairPermutation&) = default;

 private:
  static constexpr Table identity_table() {
    Table t{};
    for (unsigned i = 0; i < 16; ++i) t[i] = static_cast<std::uint8_t>(i);
    return t;
  }

  Table table_;
};

}  // namespace qpolar
