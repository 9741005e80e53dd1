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

#include "oracles.hpp"
#include "qpolar/polarization.hpp"

namespace qpolar {
namespace {

std::vector<GatePolicy> policies() {
  return {GatePolicy::fixed("L11"), GatePolicy::per_level({"L13", "L22", "R12"}), GatePolicy::random("S3", 9)};
}

TEST(GateTree, PolicyShapes) {
  auto t = make_gate_tree(3, GatePolicy::fixed("L22"));
  ASSERT_EQ(t.depth(), 3u);
  EXPECT_EQ(t.levels()[2].size(), 4u);
  EXPECT_EQ(t.node(2, 3).name, "L22");
  EXPECT_THROW(make_gate_tree(3, GatePolicy::per_level({"L11"})), std::invalid_argument);
  EXPECT_THROW(make_gate_tree(2, GatePolicy::fixed("X99")), std::invalid_argument);
  auto c = make_gate_tree(3, GatePolicy::random("all20", 4)).child(1);
  EXPECT_EQ(c.depth(), 2u);
}

TEST(GateTree, RandomPolicyIsReproducible) {
  auto a = make_gate_tree(5, GatePolicy::random("L", 77));
  auto b = make_gate_tree(5, GatePolicy::random("L", 77));
  for (unsigned k = 0; k < 5; ++k)
    for (std::size_t i = 0; i < a.levels()[k].size(); ++i) EXPECT_EQ(a.node(k, i).name, b.node(k, i).name);
}

TEST(Synthesis, FirstGoodStepFollowsTable) {
  auto w = CmpChannel::pauli({0.7, 0.1, 0.15, 0.05});
  auto tree = make_gate_tree(1, GatePolicy::fixed("L11"));
  auto good = synthesize(w, tree, {1}).channel;
  auto zw = z_all(w);
  auto expect = oracle::table_good(1, 1, zw);
  auto got = z_all(good);
  for (int d = 0; d < 3; ++d) EXPECT_NEAR(got[d], expect[d], 1e-13);
}

TEST(Synthesis, MatchesGenericOracleAtDepthTwo) {
  auto rng = stream(17, 0);
  auto p = random_pauli_vec(rng);
  auto w = CmpChannel::pauli(p);
  auto tree = make_gate_tree(2, GatePolicy::random("all20", 3));
  auto base = classical_counterpart(w);
  for (unsigned b0 = 0; b0 < 2; ++b0) {
    auto g0 = tree.node(0, 0).gamma;
    auto lvl1 = combine_generic(base, base, g0);
    const auto& c1 = b0 ? lvl1.good : lvl1.bad;
    for (unsigned b1 = 0; b1 < 2; ++b1) {
      auto lvl2 = combine_generic(c1, c1, tree.node(1, b0).gamma);
      const auto& ref = b1 ? lvl2.good : lvl2.bad;
      auto got = classical_counterpart(synthesize(w, tree, {b0, b1}).channel);
      EXPECT_TRUE(channels_equivalent(ref, got, 1e-8)) << b0 << b1;
      EXPECT_NEAR(mutual_info(ref), mutual_info(got), 1e-10);
    }
  }
}

TEST(Synthesis, MartingaleIsExact) {
  auto rng = stream(2, 0);
  for (int t = 0; t < 3; ++t) {
    auto w = CmpChannel::pauli(random_pauli_vec(rng));
    for (const auto& pol : policies()) {
      auto rep = polarization_histogram(w, make_gate_tree(3, pol));
      EXPECT_LT(rep.martingale_drift(), 1e-12);
      EXPECT_EQ(rep.total_pruned_mass, 0.0);
    }
  }
}

TEST(Synthesis, SubgroupMixturesStaySmall) {
  auto rng = stream(12, 0);
  auto w = random_subgroup_mixture(rng);
  auto rep = polarization_histogram(w, make_gate_tree(6, GatePolicy::random("S3", 1)));
  EXPECT_LT(rep.martingale_drift(), 1e-12);
  for (const auto& r : rep.records) EXPECT_LE(r.components, 5u);
}

TEST(Synthesis, DegradedHistogramBoundsExactOne) {
  auto w = CmpChannel::pauli(presets::depolarizing(0.1));
  auto tree = make_gate_tree(4, GatePolicy::random("S3", 5));
  auto exact = polarization_histogram(w, tree);
  SynthesisOptions opt;
  opt.reduce_to = 16;
  auto deg = polarization_histogram(w, tree, opt);
  EXPECT_TRUE(deg.degraded);
  for (std::size_t i = 0; i < exact.records.size(); ++i) {
    EXPECT_GE(deg.records[i].z, exact.records[i].z - 1e-12);
    EXPECT_LE(deg.records[i].mutual_info, exact.records[i].mutual_info + 1e-12);
    EXPECT_LE(deg.records[i].components, 16u);
  }
}

TEST(Synthesis, CapRaisesResourceError) {
  auto w = CmpChannel::pauli({0.7, 0.1, 0.15, 0.05});
  SynthesisOptions opt;
  opt.cap = 8;
  EXPECT_THROW(polarization_histogram(w, make_gate_tree(3, GatePolicy::random("S3", 1)), opt), resource_error);
}

TEST(Synthesis, ParallelHistogramIsIdentical) {
  auto w = CmpChannel::pauli(presets::depolarizing(0.08));
  auto tree = make_gate_tree(4, GatePolicy::random("L", 6));
  SynthesisOptions one, many;
  many.threads = 4;
  auto a = polarization_histogram(w, tree, one);
  auto b = polarization_histogram(w, tree, many);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].z, b.records[i].z);
    EXPECT_EQ(a.records[i].mutual_info, b.records[i].mutual_info);
  }
}

TEST(Synthesis, IndexBitsAreMsbFirst) {
  EXPECT_EQ(index_bits(6, 3), (std::vector<unsigned>{1, 1, 0}));
  EXPECT_EQ(index_bits(1, 3), (std::vector<unsigned>{0, 0, 1}));
}

TEST(GoodSet, SelectionTiesGoToSmallerIndex) {
  auto s = select_by_count({0.5, 0.1, 0.5, 0.1}, 3);
  EXPECT_EQ(s.info, (std::vector<std::size_t>{0, 1, 3}));
  EXPECT_EQ(s.frozen, (std::vector<std::size_t>{2}));
  EXPECT_THROW(select_by_count({0.1}, 2), std::invalid_argument);
}

TEST(GoodSet, ThresholdSelection) {
  auto w = CmpChannel::pauli(presets::depolarizing(0.05));
  auto rep = polarization_histogram(w, make_gate_tree(3, GatePolicy::random("S3", 1)));
  auto s = select_good_set_threshold(rep, 0.2);
  for (auto i : s.info) EXPECT_LE(rep.records[i].z, 0.2);
  for (auto i : s.frozen) EXPECT_GT(rep.records[i].z, 0.2);
}

TEST(MonteCarlo, TrajectoriesIndependentOfThreads) {
  auto w = CmpChannel::pauli(presets::depolarizing(0.05));
  McOptions a, b;
  b.threads = 3;
  auto s1 = mc_trajectory_z(w, gamma_set("S3"), 6, 50, 4, a);
  auto s2 = mc_trajectory_z(w, gamma_set("S3"), 6, 50, 4, b);
  for (std::size_t t = 0; t < 50; ++t) EXPECT_EQ(s1.samples[t].z, s2.samples[t].z);
}

TEST(MonteCarlo, TrajectoryMeanTracksSourceInformation) {
  // exact at n = 3 with a generous budget
  auto w = CmpChannel::pauli(presets::depolarizing(0.1));
  McOptions opt;
  opt.max_components = 1 << 16;
  auto s = mc_trajectory_z(w, gamma_set("S3"), 3, 400, 1, opt);
  EXPECT_NEAR(s.mean_mutual_info, mutual_info(w), 4 * s.stderr_mutual_info + 1e-12);
}

TEST(Probe, UselessChannelHasNoFastIndices) {
  auto w = CmpChannel::pauli({0.25, 0.25, 0.25, 0.25});
  auto rows = fast_polarization_probe(w, gamma_set("S3"), {4, 6}, 100, 1, 0.5);
  for (const auto& r : rows) EXPECT_EQ(r.rate, 0.0);
}

}  // namespace
}  // namespace qpolar
