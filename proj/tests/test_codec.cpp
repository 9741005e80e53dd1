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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "qpolar/codec.hpp"

namespace qpolar {
namespace {

PolarCodeSpec code_with(unsigned n, const GatePolicy& pol, std::vector<std::size_t> info,
                        std::vector<std::size_t> chain = {}) {
  return make_code(n, make_gate_tree(n, pol), split_by_info(std::move(info), std::size_t{1} << n), std::move(chain));
}

SymbolVector random_symbols(std::size_t len, std::mt19937_64& rng) {
  SymbolVector v(len);
  for (auto& s : v) s = PauliSymbol(static_cast<unsigned>(rng() & 3u));
  return v;
}

TEST(Encode, Cnot21Example) {
  PolarCodeSpec spec{1, make_gate_tree(1, GatePolicy::fixed("CNOT21")), {}, {0, 1}, {}};
  auto x = encode(spec, {pauli::Z, pauli::I});
  EXPECT_EQ(x, (SymbolVector{pauli::Z, pauli::Z}));
  EXPECT_EQ(encode(spec, {pauli::I, pauli::I}), (SymbolVector{pauli::I, pauli::I}));
}

TEST(Encode, InverseAndLinearity) {
  auto rng = stream(1, 0);
  for (unsigned n = 1; n <= 5; ++n) {
    auto spec = code_with(n, GatePolicy::random("all20", n), {});
    for (int t = 0; t < 10; ++t) {
      auto u = random_symbols(spec.length(), rng);
      auto w = random_symbols(spec.length(), rng);
      EXPECT_EQ(encode_inverse(spec, encode(spec, u)), u);
      EXPECT_EQ(encode(spec, encode_inverse(spec, u)), u);
      SymbolVector s(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) s[i] = u[i] ^ w[i];
      auto eu = encode(spec, u), ew = encode(spec, w), es = encode(spec, s);
      for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(es[i], eu[i] ^ ew[i]);
    }
  }
  auto spec = code_with(2, GatePolicy::fixed("L11"), {});
  EXPECT_THROW(encode(spec, SymbolVector(3)), std::invalid_argument);
}

TEST(Encode, MatchesExplicitTwoLevelNetwork) {
  auto spec = code_with(2, GatePolicy::random("L", 3), {});
  auto rng = stream(2, 0);
  auto u = random_symbols(4, rng);
  const auto& t = spec.tree;
  auto [v0a, v0b] = t.node(1, 0).gamma(u[0], u[1]);
  auto [v1a, v1b] = t.node(1, 1).gamma(u[2], u[3]);
  auto [x0, x2] = t.node(0, 0).gamma(v0a, v1a);
  auto [x1, x3] = t.node(0, 0).gamma(v0b, v1b);
  EXPECT_EQ(encode(spec, u), (SymbolVector{x0, x1, x2, x3}));
}

TEST(Decode, SingleSymbolIsArgmax) {
  PolarCodeSpec spec{0, GateTree{}, {}, {0}, {}};
  EXPECT_EQ(sc_decode(spec, {{0.1, 0.5, 0.2, 0.2}}, {})[0], pauli::X);
  EXPECT_EQ(sc_decode(spec, {{0.3, 0.3, 0.3, 0.1}}, {})[0], pauli::I);
  EXPECT_THROW(sc_decode(spec, {{0, 0, 0, 0}}, {}), decode_failure);
}

TEST(Decode, PointMassLeavesRecoverAnyInput) {
  auto rng = stream(3, 0);
  auto spec = code_with(4, GatePolicy::random("S3", 1), {});
  std::vector<std::size_t> all(spec.length());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  spec = code_with(4, GatePolicy::random("S3", 1), all);
  for (int t = 0; t < 20; ++t) {
    auto u = random_symbols(spec.length(), rng);
    auto x = encode(spec, u);
    std::vector<Likelihood> leaves(x.size(), Likelihood{0, 0, 0, 0});
    for (std::size_t i = 0; i < x.size(); ++i) leaves[i][x[i].value()] = 1;
    EXPECT_EQ(sc_decode(spec, leaves, {}), u);
  }
}

TEST(Decode, AllFrozenReturnsFrozenValues) {
  auto spec = code_with(2, GatePolicy::fixed("L22"), {});
  std::map<std::size_t, PauliSymbol> fz{{0, pauli::X}, {1, pauli::Z}, {2, pauli::I}, {3, pauli::Y}};
  std::vector<Likelihood> leaves(4, Likelihood{0.25, 0.25, 0.25, 0.25});
  EXPECT_EQ(sc_decode(spec, leaves, fz), (SymbolVector{pauli::X, pauli::Z, pauli::I, pauli::Y}));
  fz.erase(3);
  EXPECT_THROW(sc_decode(spec, leaves, fz), std::invalid_argument);
}

TEST(Decode, SecondSymbolIsMapAtLengthTwo) {
  const PauliProbVec p{0.85, 0.05, 0.05, 0.05};
  auto spec = code_with(1, GatePolicy::fixed("L11"), {1});
  const auto& g = spec.tree.node(0, 0).gamma;
  for (unsigned u0 = 0; u0 < 4; ++u0)
    for (unsigned u1 = 0; u1 < 4; ++u1)
      for (unsigned e = 0; e < 16; ++e) {
        auto [x0, x1] = g(PauliSymbol(u0), PauliSymbol(u1));
        PauliSymbol y0 = x0 ^ PauliSymbol(e >> 2), y1 = x1 ^ PauliSymbol(e & 3u);
        std::vector<Likelihood> leaves(2);
        for (unsigned s = 0; s < 4; ++s) {
          leaves[0][s] = p[(y0 ^ PauliSymbol(s)).value()];
          leaves[1][s] = p[(y1 ^ PauliSymbol(s)).value()];
        }
        auto got = sc_decode(spec, leaves, {{0, PauliSymbol(u0)}});
        EXPECT_EQ(got[1], oracle::map_second_symbol(g, p, PauliSymbol(u0), y0, y1));
      }
}

TEST(Decode, LogDomainMatchesLinearDomain) {
  auto spec = code_with(3, GatePolicy::random("S3", 2), {3, 5, 6, 7});
  auto rng = stream(4, 0);
  const PauliProbVec p{0.9, 0.04, 0.03, 0.03};
  for (int t = 0; t < 30; ++t) {
    auto e = sample_errors(p, spec.length(), rng);
    auto u = encode_inverse(spec, e);
    std::map<std::size_t, PauliSymbol> fz;
    for (auto i : spec.frozen) fz[i] = u[i];
    std::vector<Likelihood> lin(spec.length(), p), tiny(spec.length());
    for (std::size_t i = 0; i < lin.size(); ++i)
      for (int s = 0; s < 4; ++s) tiny[i][s] = lin[i][s] * 1e-305;
    EXPECT_EQ(sc_decode(spec, lin, fz), sc_decode(spec, tiny, fz));
  }
}

TEST(Simulate, TrivialCases) {
  auto spec = code_with(3, GatePolicy::random("S3", 2), {6, 7});
  EXPECT_EQ(monte_carlo(spec, presets::noiseless(), 200, 1).errors, 0u);
  auto none = code_with(3, GatePolicy::random("S3", 2), {});
  EXPECT_EQ(monte_carlo(none, presets::depolarizing(0.3), 200, 1).errors, 0u);
  EXPECT_THROW(monte_carlo(spec, presets::noiseless(), 0, 1), std::invalid_argument);
}

TEST(Simulate, MatchesExhaustiveEnumeration) {
  auto spec = code_with(2, GatePolicy::fixed("L11"), {2, 3});
  const auto p = presets::depolarizing(0.1);
  double exact = oracle::exhaustive_block_error(spec, p);
  auto mc = monte_carlo(spec, p, 20000, 5);
  EXPECT_NEAR(mc.bler, exact, 3 * binomial_stderr(exact, mc.trials) + 1e-12);
}

TEST(Simulate, ThreadCountDoesNotChangeResults) {
  auto spec = code_with(4, GatePolicy::random("S3", 8), {7, 11, 13, 14, 15});
  const auto p = presets::depolarizing(0.08);
  auto a = monte_carlo(spec, p, 3000, 9, 1);
  auto b = monte_carlo(spec, p, 3000, 9, 4);
  EXPECT_EQ(a.errors, b.errors);
}

TEST(Simulate, BlerDoesNotDependOnTransmittedSymbols) {
  // send v with v_I = 0 and random v_J over y = encode(v) + E; the channel has
  // distinct entries so the fixed tie-break plays no role
  auto spec = code_with(3, GatePolicy::random("S3", 4), {3, 5, 6, 7});
  const PauliProbVec p{0.86, 0.07, 0.045, 0.025};
  const std::size_t trials = 20000;
  std::size_t zero_err = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(31, t);
    auto e = sample_errors(p, spec.length(), rng);
    SymbolVector v(spec.length(), pauli::I);
    std::map<std::size_t, PauliSymbol> fz;
    for (auto i : spec.frozen) fz[i] = v[i] = PauliSymbol(static_cast<unsigned>(rng() & 3u));
    auto x = encode(spec, v);
    std::vector<Likelihood> leaves(spec.length());
    for (std::size_t i = 0; i < leaves.size(); ++i)
      for (unsigned s = 0; s < 4; ++s) leaves[i][s] = p[(x[i] ^ e[i] ^ PauliSymbol(s)).value()];
    auto d = sc_decode(spec, leaves, fz);
    bool ok = true;
    for (auto i : spec.info) ok &= d[i] == pauli::I;
    zero_err += !ok;
  }
  auto mc = monte_carlo(spec, p, trials, 32);
  double bz = static_cast<double>(zero_err) / trials;
  double sigma = std::hypot(binomial_stderr(bz, trials), mc.stderr);
  EXPECT_GT(bz, 0.0);
  EXPECT_NEAR(bz, mc.bler, 3 * sigma + 1e-12);
}

TEST(Genie, TrivialRates) {
  auto spec = code_with(2, GatePolicy::fixed("L11"), {0, 1, 2, 3});
  auto r = genie_channel_error_rates(spec, presets::noiseless(), 100, 1);
  for (double v : r) EXPECT_EQ(v, 0.0);
  PolarCodeSpec one{0, GateTree{}, {}, {0}, {}};
  auto u = genie_channel_error_rates(one, {0.25, 0.25, 0.25, 0.25}, 20000, 2);
  EXPECT_NEAR(u[0], 0.75, 0.02);
}

TEST(Genie, RatesRespectUnionTerms) {
  auto w = CmpChannel::pauli(presets::depolarizing(0.1));
  auto tree = make_gate_tree(4, GatePolicy::random("S3", 3));
  auto rep = polarization_histogram(w, tree);
  std::vector<std::size_t> all(16);
  for (std::size_t i = 0; i < 16; ++i) all[i] = i;
  auto spec = make_code(4, tree, split_by_info(all, 16));
  const std::size_t trials = 5000;
  auto r = genie_channel_error_rates(spec, presets::depolarizing(0.1), trials, 3);
  for (std::size_t i = 0; i < 16; ++i)
    EXPECT_LE(r[i], 3 * rep.records[i].z + 3 * binomial_stderr(r[i], trials) + 1e-12) << i;
}

TEST(Chain, RatesAreExactRationals) {
  auto c = chain_rates(3, 8, 6, 2);
  EXPECT_EQ(c.rate, Rational::make(14, 24));
  EXPECT_EQ(c.entanglement, Rational::make(2, 24));
  auto one = chain_rates(1, 8, 6, 2);
  EXPECT_EQ(one.rate, Rational::make(6, 8));
  EXPECT_EQ(one.entanglement, Rational::make(2, 8));
  EXPECT_THROW(chain_rates(2, 8, 3, 5), std::invalid_argument);
  EXPECT_THROW(chain_rates(0, 8, 6, 2), std::invalid_argument);
}

TEST(Chain, NoiselessAndSingleBlock) {
  auto spec = code_with(3, GatePolicy::random("S3", 1), {2, 3, 5, 6, 7}, {5, 6, 7});
  auto r = simulate_chain(spec, presets::noiseless(), 4, 100, 1);
  EXPECT_EQ(r.chain_bler, 0.0);
  EXPECT_EQ(r.catalyst_ok, 1.0);
  const auto p = presets::depolarizing(0.05);
  auto c1 = simulate_chain(spec, p, 1, 2000, 7);
  auto mc = monte_carlo(spec, p, 2000, 7);
  EXPECT_DOUBLE_EQ(c1.chain_bler, mc.bler);
}

TEST(Chain, ErrorsPropagateForward) {
  auto w = CmpChannel::pauli(presets::depolarizing(0.05));
  auto tree = make_gate_tree(5, GatePolicy::random("S3", 2));
  SynthesisOptions opt;
  opt.reduce_to = 64;
  auto rep = polarization_histogram(w, tree, opt);
  auto sets = select_good_set(rep, 20);
  auto scores = z_scores(rep);
  std::vector<std::size_t> order = sets.info;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });
  order.resize(sets.frozen.size());
  auto spec = make_code(5, tree, sets, order);
  auto r = simulate_chain(spec, presets::depolarizing(0.05), 3, 4000, 3);
  double tol = 3 * binomial_stderr(r.per_block_bler[0], 4000);
  for (std::size_t l = 1; l < 3; ++l) EXPECT_GE(r.per_block_bler[l], r.per_block_bler[l - 1] - tol);
  EXPECT_GE(r.chain_bler, r.per_block_bler[2]);
}

TEST(Spec, ValidationRejectsBadSets) {
  auto tree = make_gate_tree(2, GatePolicy::fixed("L11"));
  PolarCodeSpec s{2, tree, {0, 1}, {1, 2, 3}, {}};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  PolarCodeSpec t{2, tree, {0}, {2, 3}, {}};
  EXPECT_THROW(t.validate(), std::invalid_argument);
  PolarCodeSpec u{2, tree, {0, 1}, {2, 3}, {0, 2}};
  EXPECT_THROW(u.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace qpolar
