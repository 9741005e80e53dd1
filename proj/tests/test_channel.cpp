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
#include "qpolar/channel.hpp"
#include "qpolar/clifford.hpp"
#include "qpolar/random.hpp"

namespace qpolar {
namespace {

std::vector<PairPermutation> all_gammas() {
  std::vector<PairPermutation> out;
  for (const auto& g : builtin_sets().representatives()) out.push_back(gamma_of(g.action));
  return out;
}

TEST(PauliProbVec, Presets) {
  auto d = presets::depolarizing(0.3);
  EXPECT_DOUBLE_EQ(d[0], 0.7);
  EXPECT_DOUBLE_EQ(d[3], 0.1);
  EXPECT_NO_THROW(validate(presets::bitflip(0.2)));
  EXPECT_THROW(validate({0.5, 0.5, 0.5, -0.5}), std::invalid_argument);
  EXPECT_THROW(validate({0.5, 0.4, 0, 0}), std::invalid_argument);
}

TEST(PauliProbVec, ZdFormula) {
  PauliProbVec p{0.7, 0.1, 0.15, 0.05};
  // Z_X pairs (0,1) and (2,3)
  double expect = 2 * (std::sqrt(0.7 * 0.1) + std::sqrt(0.15 * 0.05));
  EXPECT_NEAR(z_d(p, pauli::X), expect, 1e-15);
  EXPECT_NEAR(z_d(p, pauli::I), 1.0, 1e-15);
}

TEST(CmpChannel, EndpointsOfMutualInfo) {
  EXPECT_NEAR(mutual_info(CmpChannel::pauli(presets::noiseless())), 1.0, 1e-15);
  EXPECT_NEAR(mutual_info(CmpChannel::pauli({0.25, 0.25, 0.25, 0.25})), 0.0, 1e-15);
  EXPECT_NEAR(z(CmpChannel::pauli({0.25, 0.25, 0.25, 0.25})), 1.0, 1e-15);
  EXPECT_NEAR(z(CmpChannel::pauli(presets::noiseless())), 0.0, 1e-15);
}

TEST(CmpChannel, CounterpartAgreesWithClosedForms) {
  auto rng = stream(11, 0);
  for (int t = 0; t < 50; ++t) {
    auto ch = random_subgroup_mixture(rng);
    auto w = classical_counterpart(ch);
    EXPECT_NEAR(mutual_info(ch), mutual_info(w), 1e-12);
    for (unsigned d = 1; d < 4; ++d) EXPECT_NEAR(z_d(ch, PauliSymbol(d)), z_d(w, PauliSymbol(d)), 1e-12);
  }
}

TEST(CmpChannel, CanonicalizeMergesTranslates) {
  PauliProbVec p{0.6, 0.3, 0.1, 0.0};
  auto q = detail::translate(p, 2);
  CmpChannel ch({{0.25, p}, {0.75, q}});
  ch.canonicalize();
  ASSERT_EQ(ch.size(), 1u);
  EXPECT_NEAR(ch.total_weight(), 1.0, 1e-15);
}

TEST(CmpChannel, PruneRenormalizes) {
  CmpChannel ch({{0.999, presets::noiseless()}, {0.001, {0.25, 0.25, 0.25, 0.25}}});
  double pruned = ch.canonicalize({1e-12, true, 0.01});
  EXPECT_NEAR(pruned, 0.001, 1e-15);
  EXPECT_EQ(ch.size(), 1u);
  EXPECT_NEAR(ch.total_weight(), 1.0, 1e-15);
}

TEST(CmpChannel, ReduceComponentsDegrades) {
  auto rng = stream(5, 0);
  CmpChannel w = CmpChannel::pauli(random_pauli_vec(rng));
  auto g = gamma_of(builtin_sets().three[1].action);
  for (int k = 0; k < 2; ++k) w = combine_good_cmp(combine_bad_cmp(w, w, g), w, g);
  ASSERT_GT(w.size(), 32u);
  CmpChannel r = w;
  reduce_components(r, 32);
  EXPECT_LE(r.size(), 32u);
  EXPECT_NEAR(r.total_weight(), 1.0, 1e-12);
  EXPECT_LE(mutual_info(r), mutual_info(w) + 1e-12);
  for (unsigned d = 1; d < 4; ++d) EXPECT_GE(z_d(r, PauliSymbol(d)), z_d(w, PauliSymbol(d)) - 1e-12);
}

TEST(Combining, CmpFastPathMatchesGenericOracle) {
  auto rng = stream(21, 0);
  auto gammas = all_gammas();
  for (int t = 0; t < 10; ++t) {
    auto n = random_subgroup_mixture(rng);
    auto m = CmpChannel::pauli(random_pauli_vec(rng));
    for (const auto& g : gammas) {
      auto ref = combine_generic(classical_counterpart(n), classical_counterpart(m), g);
      auto bad = combine_bad_cmp(n, m, g);
      auto good = combine_good_cmp(n, m, g);
      EXPECT_TRUE(channels_equivalent(ref.bad, classical_counterpart(bad), 1e-8));
      EXPECT_TRUE(channels_equivalent(ref.good, classical_counterpart(good), 1e-8));
      EXPECT_NEAR(mutual_info(ref.bad), mutual_info(bad), 1e-10);
      EXPECT_NEAR(mutual_info(ref.good), mutual_info(good), 1e-10);
    }
  }
}

TEST(Combining, EquivalenceDetectsDifference) {
  auto a = classical_counterpart(CmpChannel::pauli(presets::depolarizing(0.1)));
  auto b = classical_counterpart(CmpChannel::pauli(presets::depolarizing(0.2)));
  EXPECT_FALSE(channels_equivalent(a, b));
  EXPECT_TRUE(channels_equivalent(a, a));
}

TEST(Combining, ConservesMutualInformation) {
  auto rng = stream(3, 0);
  for (const auto& g : all_gammas()) {
    auto n = CmpChannel::pauli(random_pauli_vec(rng));
    auto m = random_subgroup_mixture(rng);
    double lhs = mutual_info(combine_bad_cmp(n, m, g)) + mutual_info(combine_good_cmp(n, m, g));
    EXPECT_NEAR(lhs, mutual_info(n) + mutual_info(m), 1e-12);
  }
}

TEST(Combining, GoodChannelTable) {
  auto rng = stream(4, 0);
  auto left = builtin_sets().left;
  for (int t = 0; t < 100; ++t) {
    auto w = CmpChannel::pauli(random_pauli_vec(rng));
    auto zw = z_all(w);
    for (unsigned i = 1; i <= 3; ++i)
      for (unsigned j = 1; j <= 3; ++j) {
        auto good = combine_good_cmp(w, w, gamma_of(left[3 * (i - 1) + (j - 1)].action));
        auto expect = oracle::table_good(i, j, zw);
        auto got = z_all(good);
        for (int d = 0; d < 3; ++d) EXPECT_NEAR(got[d], expect[d], 1e-12);
      }
  }
}

TEST(Combining, MeanGoodZOverLeftAndRightSets) {
  auto rng = stream(6, 0);
  auto sets = builtin_sets();
  for (int t = 0; t < 50; ++t) {
    auto w = CmpChannel::pauli(random_pauli_vec(rng));
    double zw = z(w);
    double target = zw / 3 + 2 * zw * zw / 3;
    for (const auto* set : {&sets.left, &sets.right}) {
      double mean = 0;
      for (const auto& g : *set) mean += z(combine_good_cmp(w, w, gamma_of(g.action))) / 9;
      EXPECT_NEAR(mean, target, 1e-12);
    }
    double mean3 = 0;
    for (const auto& g : sets.three) mean3 += z(combine_good_cmp(w, w, gamma_of(g.action))) / 3;
    EXPECT_LE(mean3, target + 1e-12);
  }
}

TEST(Combining, BadChannelBounds) {
  auto rng = stream(8, 0);
  auto gammas = all_gammas();
  for (int t = 0; t < 50; ++t) {
    auto w = CmpChannel::pauli(random_pauli_vec(rng));
    auto zw = z_all(w);
    for (const auto& g : gammas) {
      auto bad = combine_bad_cmp(w, w, g);
      EXPECT_LE(z_bar(bad), 4 * z_bar(w) + 1e-12);
      EXPECT_LE(z(bad), 12 * z(w) + 1e-12);
      std::array<double, 4> zf{1, zw[0], zw[1], zw[2]};
      for (unsigned d = 1; d < 4; ++d) {
        double bound = 0;
        for (unsigned dp = 0; dp < 4; ++dp) {
          auto [a, b] = g(PauliSymbol(d), PauliSymbol(dp));
          bound += zf[a.value()] * zf[b.value()];
        }
        EXPECT_LE(z_d(bad, PauliSymbol(d)), bound + 1e-12);
      }
    }
  }
}

}  // namespace
}  // namespace qpolar
