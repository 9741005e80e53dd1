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

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "qpolar/pauli.hpp"

namespace qpolar {

namespace detail {

/// Pauli operator i^phase * prod_q X_q^{x_q} Z_q^{z_q}; qubit 0 is the most significant slot.
struct PhasedPauli {
  std::uint8_t x = 0;
  std::uint8_t z = 0;
  std::uint8_t phase = 0;  // power of i, mod 4

  PhasedPauli operator*(const PhasedPauli& o) const {
    // Z^z X^x' = (-1)^{z.x'} X^x' Z^z
    unsigned anti = static_cast<unsigned>(__builtin_popcount(z & o.x));
    return {static_cast<std::uint8_t>(x ^ o.x), static_cast<std::uint8_t>(z ^ o.z),
            static_cast<std::uint8_t>((phase + o.phase + 2 * anti) & 3u)};
  }
};

/// Hermitian representative of the (x, z) class: i^{popcount(x & z)} X^x Z^z.
inline PhasedPauli hermitian(std::uint8_t x, std::uint8_t z) {
  return {x, z, static_cast<std::uint8_t>(__builtin_popcount(x & z) & 3)};
}

}  // namespace detail

/// Conjugation action of an NQ-qubit Clifford unitary on the signed Pauli group,
/// with global phase forgotten.
///
/// Stored as its full action table on the 4^NQ Hermitian Paulis: index p maps to
/// image(p) with a sign bit. Pauli index for two qubits is 4*i + j (qubit 1
/// symbol i, qubit 2 symbol j). Equality of tables is equality of
/// (symplectic, signs), since the table is determined by the images of a basis.
template <unsigned NQ>
class CliffordAction {
  static_assert(NQ == 1 || NQ == 2, "only one- and two-qubit actions are supported");

 public:
  static constexpr unsigned kBits = 2 * NQ;
  static constexpr unsigned kSize = 1u << kBits;
  using Table = std::array<std::uint8_t, kSize>;

  CliffordAction() {
    for (unsigned p = 0; p < kSize; ++p) image_[p] = static_cast<std::uint8_t>(p);
  }
  CliffordAction(const Table& image, std::uint32_t negative_mask) : image_(image), neg_(negative_mask) {}

  static CliffordAction identity() { return CliffordAction(); }

  /// Builds the action from the signed images of X_q and Z_q, each given as
  /// (Pauli index, negative?). Throws if the images do not define an automorphism.
  static CliffordAction from_generator_images(const std::array<std::pair<unsigned, bool>, kBits>& x_then_z) {
    std::array<detail::PhasedPauli, kBits> gens{};  // X_0, Z_0, X_1, Z_1, ...
    for (unsigned k = 0; k < kBits; ++k) {
      auto [x, z] = index_to_xz(x_then_z[k].first);
      gens[k] = detail::hermitian(x, z);
      if (x_then_z[k].second) gens[k].phase = static_cast<std::uint8_t>((gens[k].phase + 2) & 3u);
    }
    Table image{};
    std::uint32_t neg = 0;
    std::uint32_t seen = 0;
    for (unsigned p = 0; p < kSize; ++p) {
      auto [x, z] = index_to_xz(p);
      detail::PhasedPauli acc{0, 0, static_cast<std::uint8_t>(__builtin_popcount(x & z) & 3)};
      for (unsigned q = 0; q < NQ; ++q) {
        unsigned bit = NQ - 1 - q;
        if ((x >> bit) & 1u) acc = acc * gens[2 * q];
        if ((z >> bit) & 1u) acc = acc * gens[2 * q + 1];
      }
      auto herm = detail::hermitian(acc.x, acc.z);
      unsigned rel = (acc.phase + 4 - herm.phase) & 3u;
      if (rel & 1u) throw std::invalid_argument("generator images do not preserve hermiticity");
      unsigned img = xz_to_index(acc.x, acc.z);
      image[p] = static_cast<std::uint8_t>(img);
      seen |= 1u << img;
      if (rel == 2) neg |= 1u << p;
    }
    if (seen != (kSize == 32 ? 0xFFFFFFFFu : ((1u << kSize) - 1)))
      throw std::invalid_argument("generator images do not define a bijection");
    CliffordAction c(image, neg);
    if (!c.is_symplectic()) throw std::invalid_argument("generator images are not symplectic");
    return c;
  }

  /// Image of Pauli index p as (index, negative?).
  std::pair<unsigned, bool> conjugate_index(unsigned p) const { return {image_[p], ((neg_ >> p) & 1u) != 0}; }

  const Table& table() const { return image_; }
  std::uint32_t negative_mask() const { return neg_; }

  /// Unitary product: (a * b) acts as conjugation by b first, then a.
  CliffordAction operator*(const CliffordAction& b) const {
    Table t{};
    std::uint32_t neg = 0;
    for (unsigned p = 0; p < kSize; ++p) {
      unsigned mid = b.image_[p];
      t[p] = image_[mid];
      if ((((b.neg_ >> p) ^ (neg_ >> mid)) & 1u) != 0) neg |= 1u << p;
    }
    return CliffordAction(t, neg);
  }

  /// Symplectic matrix over GF(2) in the coordinates [u1 u2 (v1 v2)], one bitmask
  /// per row; bit (kBits-1-c) of row r is entry (r, c).
  std::array<std::uint8_t, kBits> symplectic() const {
    std::array<std::uint8_t, kBits> rows{};
    for (unsigned c = 0; c < kBits; ++c) {
      unsigned col = image_[1u << (kBits - 1 - c)];
      for (unsigned r = 0; r < kBits; ++r)
        if ((col >> (kBits - 1 - r)) & 1u) rows[r] |= static_cast<std::uint8_t>(1u << (kBits - 1 - c));
    }
    return rows;
  }

  /// Sign bits of the images of the coordinate basis vectors, bit (kBits-1-c) for basis c.
  /// For one qubit the basis is (Y, X); for two qubits (Y1, X1, Y2, X2).
  std::uint8_t signs() const {
    std::uint8_t s = 0;
    for (unsigned c = 0; c < kBits; ++c) {
      unsigned p = 1u << (kBits - 1 - c);
      if ((neg_ >> p) & 1u) s |= static_cast<std::uint8_t>(1u << (kBits - 1 - c));
    }
    return s;
  }

  /// M^T Omega M = Omega with Omega pairing (u1, u2) within each qubit.
  bool is_symplectic() const {
    for (unsigned a = 0; a < kBits; ++a)
      for (unsigned b = 0; b < kBits; ++b) {
        unsigned x = 1u << a, y = 1u << b;
        if (form(image_[x], image_[y]) != form(x, y)) return false;
      }
    return true;
  }

  /// Canonical ordering key: (symplectic row bits, sign bits).
  auto key() const { return std::make_tuple(symplectic(), signs()); }

  friend bool operator==(const CliffordAction& a, const CliffordAction& b) {
    return a.image_ == b.image_ && a.neg_ == b.neg_;
  }

  struct Hash {
    std::size_t operator()(const CliffordAction& c) const {
      std::uint64_t h = c.neg_;
      for (auto v : c.image_) h = h * 0x100000001B3ull ^ v;
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  /// Symplectic form on kBits-bit vectors in [u1 u2 v1 v2] coordinates.
  static unsigned form(unsigned x, unsigned y) {
    unsigned acc = 0;
    for (unsigned q = 0; q < NQ; ++q) {
      unsigned sh = 2 * q;
      unsigned x1 = (x >> (sh + 1)) & 1u, x2 = (x >> sh) & 1u;
      unsigned y1 = (y >> (sh + 1)) & 1u, y2 = (y >> sh) & 1u;
      acc ^= (x1 & y2) ^ (x2 & y1);
    }
    return acc;
  }

  static std::pair<std::uint8_t, std::uint8_t> index_to_xz(unsigned p) {
    std::uint8_t x = 0, z = 0;
    for (unsigned q = 0; q < NQ; ++q) {
      PauliSymbol s((p >> (2 * (NQ - 1 - q))) & 3u);
      unsigned bit = NQ - 1 - q;
      x |= static_cast<std::uint8_t>(s.x_bit() << bit);
      z |= static_cast<std::uint8_t>(s.z_bit() << bit);
    }
    return {x, z};
  }

  static unsigned xz_to_index(unsigned x, unsigned z) {
    unsigned p = 0;
    for (unsigned q = 0; q < NQ; ++q) {
      unsigned bit = NQ - 1 - q;
      p = (p << 2) | PauliSymbol::from_xz((x >> bit) & 1u, (z >> bit) & 1u).value();
    }
    return p;
  }

 private:
  Table image_{};
  std::uint32_t neg_ = 0;
};

using Clifford1 = CliffordAction<1>;
using Clifford2 = CliffordAction<2>;

template <unsigned NQ>
bool canonical_less(const CliffordAction<NQ>& a, const CliffordAction<NQ>& b) {
  return a.key() < b.key();
}

/// Signed Pauli conjugation C sigma_{i,j} C^dagger.
struct ConjugationResult {
  std::pair<PauliSymbol, PauliSymbol> pauli;
  bool negative = false;
};

inline ConjugationResult conjugate(const Clifford2& c, std::pair<PauliSymbol, PauliSymbol> p) {
  auto [img, neg] = c.conjugate_index(pair_index(p.first, p.second));
  return {{PauliSymbol(img >> 2), PauliSymbol(img & 3u)}, neg};
}

/// Forgets signs.
inline PairPermutation gamma_of(const Clifford2& c) {
  PairPermutation::Table t{};
  for (unsigned p = 0; p < 16; ++p) t[p] = c.table()[p];
  return PairPermutation(t);
}

inline Clifford2 tensor(const Clifford1& a, const Clifford1& b) {
  Clifford2::Table t{};
  std::uint32_t neg = 0;
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 4; ++j) {
      auto [ia, na] = a.conjugate_index(i);
      auto [jb, nb] = b.conjugate_index(j);
      t[4 * i + j] = static_cast<std::uint8_t>(4 * ia + jb);
      if (na != nb) neg |= 1u << (4 * i + j);
    }
  return Clifford2(t, neg);
}

// Gate library. Each gate is given by the images of X and Z per qubit.
namespace gates {

inline Clifford1 single(unsigned x_img, bool x_neg, unsigned z_img, bool z_neg) {
  return Clifford1::from_generator_images({{{x_img, x_neg}, {z_img, z_neg}}});
}

inline Clifford1 I() { return Clifford1::identity(); }
inline Clifford1 H() { return single(pauli::Z.value(), false, pauli::X.value(), false); }
/// diag(1, i)
inline Clifford1 S() { return single(pauli::Y.value(), false, pauli::Z.value(), false); }
/// sqrt(P) = (1 - i)(1 + iP)/2
inline Clifford1 sqrt_x() { return single(pauli::X.value(), false, pauli::Y.value(), false); }
inline Clifford1 sqrt_y() { return single(pauli::Z.value(), false, pauli::X.value(), true); }
inline Clifford1 sqrt_z() { return single(pauli::Y.value(), true, pauli::Z.value(), false); }

inline Clifford2 on_first(const Clifford1& g) { return tensor(g, Clifford1::identity()); }
inline Clifford2 on_second(const Clifford1& g) { return tensor(Clifford1::identity(), g); }

/// CNOT with control on qubit 1, target on qubit 2.
inline Clifford2 cnot12() {
  auto idx = [](PauliSymbol a, PauliSymbol b) { return pair_index(a, b); };
  const PauliSymbol I = pauli::I, X = pauli::X, Z = pauli::Z;
  return Clifford2::from_generator_images(
      {{{idx(X, X), false}, {idx(Z, I), false}, {idx(I, X), false}, {idx(Z, Z), false}}});
}

/// CNOT with control on qubit 2, target on qubit 1.
inline Clifford2 cnot21() {
  auto idx = [](PauliSymbol a, PauliSymbol b) { return pair_index(a, b); };
  const PauliSymbol I = pauli::I, X = pauli::X, Z = pauli::Z;
  return Clifford2::from_generator_images(
      {{{idx(X, I), false}, {idx(Z, Z), false}, {idx(X, X), false}, {idx(I, Z), false}}});
}

inline Clifford2 swap() {
  auto idx = [](PauliSymbol a, PauliSymbol b) { return pair_index(a, b); };
  const PauliSymbol I = pauli::I, X = pauli::X, Z = pauli::Z;
  return Clifford2::from_generator_images(
      {{{idx(I, X), false}, {idx(I, Z), false}, {idx(X, I), false}, {idx(Z, I), false}}});
}

}  // namespace gates

enum class Generator : std::uint8_t { kH1, kS1, kH2, kS2, kCnot12 };

inline Clifford2 generator_action(Generator g) {
  switch (g) {
    case Generator::kH1: return gates::on_first(gates::H());
    case Generator::kS1: return gates::on_first(gates::S());
    case Generator::kH2: return gates::on_second(gates::H());
    case Generator::kS2: return gates::on_second(gates::S());
    case Generator::kCnot12: return gates::cnot12();
  }
  throw std::logic_error("unknown generator");
}

/// Enumerated group with, for every element, a generator word (in application
/// order) whose product realizes it exactly, signs included.
template <unsigned NQ>
struct CliffordGroup {
  std::vector<CliffordAction<NQ>> elements;  // canonical order
  std::vector<std::vector<Generator>> words;

  std::size_t index_of(const CliffordAction<NQ>& c) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), c, canonical_less<NQ>);
    if (it == elements.end() || !(*it == c)) throw std::out_of_range("element not in group");
    return static_cast<std::size_t>(it - elements.begin());
  }
};

namespace detail {

template <unsigned NQ>
CliffordGroup<NQ> bfs_closure(const std::vector<std::pair<Generator, CliffordAction<NQ>>>& gens) {
  using C = CliffordAction<NQ>;
  std::unordered_map<C, std::size_t, typename C::Hash> seen;
  std::vector<C> found{C::identity()};
  std::vector<std::vector<Generator>> words{{}};
  seen.emplace(found[0], 0);
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (const auto& [name, g] : gens) {
      C next = g * found[head];
      if (seen.contains(next)) continue;
      seen.emplace(next, found.size());
      auto w = words[head];
      w.push_back(name);
      found.push_back(next);
      words.push_back(std::move(w));
    }
  }
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return canonical_less(found[a], found[b]); });
  CliffordGroup<NQ> out;
  out.elements.reserve(found.size());
  out.words.reserve(found.size());
  for (auto i : order) {
    out.elements.push_back(found[i]);
    out.words.push_back(std::move(words[i]));
  }
  return out;
}

}  // namespace detail

/// All 24 single-qubit actions, generated by H and S.
inline CliffordGroup<1> enumerate_single_qubit_group() {
  return detail::bfs_closure<1>({{Generator::kH1, gates::H()}, {Generator::kS1, gates::S()}});
}

/// All 11520 two-qubit actions, generated by H and S on each qubit and CNOT.
inline CliffordGroup<2> enumerate_clifford_group() {
  std::vector<std::pair<Generator, Clifford2>> gens;
  for (auto g : {Generator::kH1, Generator::kS1, Generator::kH2, Generator::kS2, Generator::kCnot12})
    gens.emplace_back(g, generator_action(g));
  return detail::bfs_closure<2>(gens);
}

inline std::vector<Clifford2> enumerate_clifford_actions() { return enumerate_clifford_group().elements; }

struct NamedGate {
  std::string name;
  Clifford2 action;
};

/// The gate sets used for channel combining: L = {(C1 x C2) CNOT21},
/// R = {S L}, and the three-gate subset S3 = {L13, L22, L31}.
struct BuiltinSets {
  std::vector<NamedGate> left;
  std::vector<NamedGate> right;
  std::vector<NamedGate> three;
  NamedGate identity;
  NamedGate swap;

  /// I, S, L11..L33, R11..R33.
  std::vector<NamedGate> representatives() const {
    std::vector<NamedGate> out{identity, swap};
    out.insert(out.end(), left.begin(), left.end());
    out.insert(out.end(), right.begin(), right.end());
    return out;
  }
};

inline BuiltinSets builtin_sets() {
  const std::array<Clifford1, 3> first{gates::I(), gates::sqrt_z(), gates::sqrt_y()};
  const std::array<Clifford1, 3> second{gates::I(), gates::sqrt_x(), gates::sqrt_y()};
  BuiltinSets s;
  s.identity = {"I", Clifford2::identity()};
  s.swap = {"S", gates::swap()};
  const Clifford2 cx = gates::cnot21();
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 0; j < 3; ++j) {
      std::string suffix = std::to_string(i + 1) + std::to_string(j + 1);
      Clifford2 l = tensor(first[i], second[j]) * cx;
      s.left.push_back({"L" + suffix, l});
      s.right.push_back({"R" + suffix, s.swap.action * l});
    }
  for (const char* n : {"L13", "L22", "L31"})
    for (const auto& g : s.left)
      if (g.name == n) s.three.push_back(g);
  return s;
}

/// Looks up I, S, CNOT21, CNOT12, Lij, Rij by name.
inline std::optional<Clifford2> builtin_gate(std::string_view name) {
  if (name == "CNOT21") return gates::cnot21();
  if (name == "CNOT12") return gates::cnot12();
  auto s = builtin_sets();
  for (const auto& g : s.representatives())
    if (g.name == name) return g.action;
  return std::nullopt;
}

/// Named gate set: "L", "R", "S3", "all20".
inline std::vector<NamedGate> named_gate_set(std::string_view set) {
  auto s = builtin_sets();
  if (set == "L") return s.left;
  if (set == "R") return s.right;
  if (set == "S3") return s.three;
  if (set == "all20") return s.representatives();
  throw std::invalid_argument("unknown gate set: " + std::string(set));
}

/// Partition of the two-qubit group into left cosets of C1 x C1.
struct CosetClassification {
  std::vector<int> class_of;                   // per element of the canonical enumeration
  std::vector<std::vector<std::size_t>> cells;  // element indices per class
  std::vector<NamedGate> representatives;       // built-in member of each class, by class id
  std::vector<std::size_t> representative_index;
};

inline CosetClassification classify_cosets(const CliffordGroup<2>& group) {
  const auto single = enumerate_single_qubit_group();
  std::vector<Clifford2> local;
  local.reserve(single.elements.size() * single.elements.size());
  for (const auto& a : single.elements)
    for (const auto& b : single.elements) local.push_back(tensor(a, b));

  std::unordered_map<Clifford2, std::size_t, Clifford2::Hash> index;
  for (std::size_t i = 0; i < group.elements.size(); ++i) index.emplace(group.elements[i], i);

  CosetClassification out;
  out.class_of.assign(group.elements.size(), -1);
  for (std::size_t i = 0; i < group.elements.size(); ++i) {
    if (out.class_of[i] >= 0) continue;
    const int id = static_cast<int>(out.cells.size());
    out.cells.emplace_back();
    for (const auto& h : local) {
      auto it = index.find(group.elements[i] * h);
      if (it == index.end()) throw std::logic_error("coset element outside the enumerated group");
      if (out.class_of[it->second] < 0) {
        out.class_of[it->second] = id;
        out.cells.back().push_back(it->second);
      }
    }
    std::sort(out.cells.back().begin(), out.cells.back().end());
  }

  auto builtins = builtin_sets().representatives();
  out.representatives.resize(out.cells.size());
  out.representative_index.assign(out.cells.size(), group.elements.size());
  std::vector<bool> hit(out.cells.size(), false);
  for (const auto& g : builtins) {
    auto it = index.find(g.action);
    if (it == index.end()) throw std::logic_error("built-in gate " + g.name + " not in group");
    int cls = out.class_of[it->second];
    if (hit[static_cast<std::size_t>(cls)])
      throw std::logic_error("built-in gates " + g.name + " and " +
                             out.representatives[static_cast<std::size_t>(cls)].name + " share a class");
    hit[static_cast<std::size_t>(cls)] = true;
    out.representatives[static_cast<std::size_t>(cls)] = g;
    out.representative_index[static_cast<std::size_t>(cls)] = it->second;
  }
  if (std::find(hit.begin(), hit.end(), false) != hit.end())
    throw std::logic_error("built-in representatives do not cover every coset");
  return out;
}

/// Good-step offsets (A(0,d), B(0,d)) for d = 1, 2, 3.
inline std::array<std::pair<PauliSymbol, PauliSymbol>, 3> good_step_offsets(const PairPermutation& g) {
  std::array<std::pair<PauliSymbol, PauliSymbol>, 3> out{};
  for (unsigned d = 1; d < 4; ++d) out[d - 1] = g(pauli::I, PauliSymbol(d));
  return out;
}

/// For permutations whose good-step offsets have the shape
///   Z3 -> Z_{d3},  Z2 -> Z_{d3} Z_{d2},  Z1 -> Z_{d3} Z_{d1}
/// with {d1, d2, d3} = {1, 2, 3}, returns {d1, d2, d3}.
inline std::optional<std::array<unsigned, 3>> delta_profile(const PairPermutation& g) {
  auto off = good_step_offsets(g);
  auto split = [](std::pair<PauliSymbol, PauliSymbol> p) {
    std::array<unsigned, 2> v{p.first.value(), p.second.value()};
    std::sort(v.begin(), v.end());
    return v;
  };
  auto z3 = split(off[2]);
  if (z3[0] != 0 || z3[1] == 0) return std::nullopt;
  unsigned d3 = z3[1];
  auto other = [&](std::array<unsigned, 2> v) -> std::optional<unsigned> {
    if (v[0] == d3 && v[1] != d3 && v[1] != 0) return v[1];
    if (v[1] == d3 && v[0] != d3 && v[0] != 0) return v[0];
    return std::nullopt;
  };
  auto d2 = other(split(off[1]));
  auto d1 = other(split(off[0]));
  if (!d1 || !d2 || *d1 == *d2) return std::nullopt;
  return std::array<unsigned, 3>{*d1, *d2, d3};
}

}  // namespace qpolar
