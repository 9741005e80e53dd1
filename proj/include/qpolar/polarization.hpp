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
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qpolar/channel.hpp"
#include "qpolar/clifford.hpp"
#include "qpolar/errors.hpp"
#include "qpolar/parallel.hpp"
#include "qpolar/random.hpp"

namespace qpolar {

struct NamedPermutation {
  std::string name;
  PairPermutation gamma;
};

inline std::vector<NamedPermutation> gamma_set(std::string_view set) {
  std::vector<NamedPermutation> out;
  for (const auto& g : named_gate_set(set)) out.push_back({g.name, gamma_of(g.action)});
  return out;
}

inline NamedPermutation named_gamma(std::string_view name) {
  auto g = builtin_gate(name);
  if (!g) throw std::invalid_argument("unknown gate: " + std::string(name));
  return {std::string(name), gamma_of(*g)};
}

/// Complete binary tree of combining permutations; node (k, prefix) is used at
/// depth k for the channel whose index starts with the k-bit `prefix`.
class GateTree {
 public:
  GateTree() = default;
  explicit GateTree(std::vector<std::vector<NamedPermutation>> levels) : levels_(std::move(levels)) {
    for (std::size_t k = 0; k < levels_.size(); ++k)
      if (levels_[k].size() != (std::size_t{1} << k)) throw std::invalid_argument("gate tree level has wrong size");
  }

  unsigned depth() const { return static_cast<unsigned>(levels_.size()); }
  const NamedPermutation& node(unsigned level, std::size_t prefix) const { return levels_.at(level).at(prefix); }
  const std::vector<std::vector<NamedPermutation>>& levels() const { return levels_; }

  /// Subtree rooted at child `bit` of the root.
  GateTree child(unsigned bit) const {
    std::vector<std::vector<NamedPermutation>> sub;
    for (std::size_t k = 1; k < levels_.size(); ++k) {
      std::size_t half = std::size_t{1} << (k - 1);
      sub.emplace_back(levels_[k].begin() + static_cast<std::ptrdiff_t>(bit * half),
                       levels_[k].begin() + static_cast<std::ptrdiff_t>((bit + 1) * half));
    }
    return GateTree(std::move(sub));
  }

 private:
  std::vector<std::vector<NamedPermutation>> levels_;
};

struct GatePolicy {
  enum class Kind { kFixed, kPerLevel, kRandom };
  Kind kind = Kind::kFixed;
  std::vector<std::string> gates{"L11"};  // one name for kFixed, one per level for kPerLevel
  std::string set = "S3";                 // for kRandom
  std::uint64_t seed = 0;

  static GatePolicy fixed(std::string name) { return {Kind::kFixed, {std::move(name)}, "", 0}; }
  static GatePolicy per_level(std::vector<std::string> names) { return {Kind::kPerLevel, std::move(names), "", 0}; }
  static GatePolicy random(std::string set, std::uint64_t seed) { return {Kind::kRandom, {}, std::move(set), seed}; }
};

inline GateTree make_gate_tree(unsigned n, const GatePolicy& policy) {
  std::vector<std::vector<NamedPermutation>> levels(n);
  switch (policy.kind) {
    case GatePolicy::Kind::kFixed: {
      if (policy.gates.size() != 1) throw std::invalid_argument("fixed policy needs exactly one gate");
      auto g = named_gamma(policy.gates[0]);
      for (unsigned k = 0; k < n; ++k) levels[k].assign(std::size_t{1} << k, g);
      break;
    }
    case GatePolicy::Kind::kPerLevel: {
      if (policy.gates.size() != n) throw std::invalid_argument("per-level policy needs one gate per level");
      for (unsigned k = 0; k < n; ++k) levels[k].assign(std::size_t{1} << k, named_gamma(policy.gates[k]));
      break;
    }
    case GatePolicy::Kind::kRandom: {
      auto set = gamma_set(policy.set);
      std::mt19937_64 rng(policy.seed);
      for (unsigned k = 0; k < n; ++k)
        for (std::size_t i = 0; i < (std::size_t{1} << k); ++i)
          levels[k].push_back(set[std::uniform_int_distribution<std::size_t>(0, set.size() - 1)(rng)]);
      break;
    }
  }
  return GateTree(std::move(levels));
}

struct SynthesisOptions {
  CanonicalOptions canonical{};
  std::size_t cap = std::size_t{1} << 20;  // components per synthesized channel
  std::size_t reduce_to = 0;               // nonzero: degrade each channel to at most this many components
  bool check_bounds = true;                // assert good-step exactness and bad-step bounds
  unsigned threads = 1;
};

struct SynthesisResult {
  CmpChannel channel;
  double pruned_mass = 0;
};

namespace detail {

inline std::string prefix_string(std::size_t prefix, unsigned len) {
  std::string s;
  for (unsigned k = 0; k < len; ++k) s += ((prefix >> (len - 1 - k)) & 1u) ? '1' : '0';
  return s.empty() ? "(root)" : s;
}

/// One combining step on a channel that sits at node `prefix` of depth `level`.
inline SynthesisResult split_step(const SynthesisResult& parent, const PairPermutation& g, unsigned bit,
                                  const SynthesisOptions& opt, std::size_t child_prefix, unsigned child_len) {
  const auto& w = parent.channel;
  const std::size_t k = w.size();
  const std::size_t raw = (bit ? 4 : 1) * k * k;
  if (opt.reduce_to == 0 && opt.canonical.prune == 0 && raw > 16 * opt.cap)
    throw resource_error("component cap exceeded at prefix " + prefix_string(child_prefix, child_len));
  double pruned = 0;
  CmpChannel c = bit ? combine_good_cmp(w, w, g, opt.canonical, &pruned) : combine_bad_cmp(w, w, g, opt.canonical, &pruned);
  if (opt.reduce_to) reduce_components(c, opt.reduce_to);
  if (c.size() > opt.cap)
    throw resource_error("component cap exceeded at prefix " + prefix_string(child_prefix, child_len));
  if (opt.check_bounds && opt.reduce_to == 0 && opt.canonical.prune == 0) {
    auto zp = z_all(w);
    auto zc = z_all(c);
    auto zfull = [&](unsigned d) { return d == 0 ? 1.0 : zp[d - 1]; };
    if (bit) {
      for (unsigned d = 1; d < 4; ++d) {
        auto [a, b] = g(pauli::I, PauliSymbol(d));
        double expect = zfull(a.value()) * zfull(b.value());
        if (std::abs(zc[d - 1] - expect) > 1e-9)
          throw verification_failure("good-step Z_d identity violated at prefix " + prefix_string(child_prefix, child_len));
      }
    } else {
      double zbar_p = std::max({zp[0], zp[1], zp[2]}), zbar_c = std::max({zc[0], zc[1], zc[2]});
      double zm_p = (zp[0] + zp[1] + zp[2]) / 3, zm_c = (zc[0] + zc[1] + zc[2]) / 3;
      if (zbar_c > 4 * zbar_p + 1e-9 || zm_c > 12 * zm_p + 1e-9)
        throw verification_failure("bad-step bound violated at prefix " + prefix_string(child_prefix, child_len));
    }
  }
  return {std::move(c), parent.pruned_mass + pruned};
}

}  // namespace detail

/// Channel W^(b1...bn): bit 0 takes the bad child, bit 1 the good child.
inline SynthesisResult synthesize(const CmpChannel& w, const GateTree& tree, const std::vector<unsigned>& bits,
                                  const SynthesisOptions& opt = {}) {
  if (bits.size() != tree.depth()) throw std::invalid_argument("index length must equal tree depth");
  SynthesisResult cur{w, 0};
  std::size_t prefix = 0;
  for (unsigned k = 0; k < bits.size(); ++k) {
    const auto& g = tree.node(k, prefix).gamma;
    prefix = (prefix << 1) | (bits[k] & 1u);
    cur = detail::split_step(cur, g, bits[k] & 1u, opt, prefix, k + 1);
  }
  return cur;
}

inline std::vector<unsigned> index_bits(std::size_t index, unsigned n) {
  std::vector<unsigned> b(n);
  for (unsigned k = 0; k < n; ++k) b[k] = (index >> (n - 1 - k)) & 1u;
  return b;
}

struct IndexRecord {
  std::size_t index = 0;
  std::array<double, 3> z_d{};
  double z = 0;
  double mutual_info = 0;
  std::size_t components = 0;
  double pruned_mass = 0;
};

struct PolarizationReport {
  unsigned n = 0;
  std::vector<IndexRecord> records;
  double delta = 0.01;
  double source_mutual_info = 0;
  double mean_mutual_info = 0;
  double fraction_good = 0;    // I >= 1 - delta
  double fraction_middle = 0;  // delta < I < 1 - delta
  double fraction_bad = 0;     // I <= delta
  double total_pruned_mass = 0;
  bool degraded = false;

  double martingale_drift() const { return std::abs(mean_mutual_info - source_mutual_info); }
};

inline void summarize(PolarizationReport& r) {
  double good = 0, mid = 0, bad = 0, sum = 0, pruned = 0;
  for (const auto& rec : r.records) {
    sum += rec.mutual_info;
    pruned = std::max(pruned, rec.pruned_mass);
    if (rec.mutual_info >= 1 - r.delta) {
      good += 1;
    } else if (rec.mutual_info > r.delta) {
      mid += 1;
    } else {
      bad += 1;
    }
  }
  double n = static_cast<double>(r.records.size());
  r.mean_mutual_info = sum / n;
  r.fraction_good = good / n;
  r.fraction_middle = mid / n;
  r.fraction_bad = bad / n;
  r.total_pruned_mass = pruned;
}

/// Synthesizes every index of the tree level by level.
inline PolarizationReport polarization_histogram(const CmpChannel& w, const GateTree& tree,
                                                 const SynthesisOptions& opt = {}, double delta = 0.01) {
  const unsigned n = tree.depth();
  std::vector<SynthesisResult> level{{w, 0}};
  for (unsigned k = 0; k < n; ++k) {
    std::vector<SynthesisResult> next(level.size() * 2);
    parallel_for(next.size(), opt.threads, [&](std::size_t i) {
      std::size_t parent = i >> 1;
      next[i] = detail::split_step(level[parent], tree.node(k, parent).gamma, static_cast<unsigned>(i & 1u), opt, i, k + 1);
    });
    level = std::move(next);
  }
  PolarizationReport r;
  r.n = n;
  r.delta = delta;
  r.degraded = opt.reduce_to != 0;
  r.source_mutual_info = mutual_info(w);
  r.records.resize(level.size());
  for (std::size_t i = 0; i < level.size(); ++i) {
    auto& rec = r.records[i];
    rec.index = i;
    rec.z_d = z_all(level[i].channel);
    rec.z = (rec.z_d[0] + rec.z_d[1] + rec.z_d[2]) / 3;
    rec.mutual_info = mutual_info(level[i].channel);
    rec.components = level[i].channel.size();
    rec.pruned_mass = level[i].pruned_mass;
  }
  summarize(r);
  return r;
}

struct GoodSet {
  std::vector<std::size_t> info;    // ascending
  std::vector<std::size_t> frozen;  // ascending
};

inline GoodSet split_by_info(std::vector<std::size_t> info, std::size_t total) {
  std::sort(info.begin(), info.end());
  GoodSet s;
  s.info = info;
  std::vector<bool> in(total, false);
  for (auto i : info) in.at(i) = true;
  for (std::size_t i = 0; i < total; ++i)
    if (!in[i]) s.frozen.push_back(i);
  return s;
}

/// The k indices with smallest score, ties to the smaller index.
inline GoodSet select_by_count(const std::vector<double>& score, std::size_t k) {
  if (k > score.size()) throw std::invalid_argument("requested more good indices than the code length");
  std::vector<std::size_t> order(score.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  order.resize(k);
  return split_by_info(std::move(order), score.size());
}

inline std::vector<double> z_scores(const PolarizationReport& r) {
  std::vector<double> s;
  for (const auto& rec : r.records) s.push_back(rec.z);
  return s;
}

inline GoodSet select_good_set(const PolarizationReport& r, std::size_t k) { return select_by_count(z_scores(r), k); }

inline GoodSet select_good_set_threshold(const PolarizationReport& r, double z_max) {
  std::vector<std::size_t> info;
  for (const auto& rec : r.records)
    if (rec.z <= z_max) info.push_back(rec.index);
  return split_by_info(std::move(info), r.records.size());
}

struct McOptions {
  std::size_t max_components = 64;  // per-trajectory channel is degraded to this size after every step
  unsigned threads = 1;
};

struct TrajectorySample {
  double z = 0;
  double mutual_info = 0;
};

struct McSummary {
  unsigned n = 0;
  std::vector<TrajectorySample> samples;  // by trajectory index
  double mean_mutual_info = 0;
  double stderr_mutual_info = 0;

  double fraction_mutual_info_at_least(double t) const {
    std::size_t c = 0;
    for (const auto& s : samples) c += s.mutual_info >= t;
    return static_cast<double>(c) / static_cast<double>(samples.size());
  }
  double fraction_mutual_info_between(double lo, double hi) const {
    std::size_t c = 0;
    for (const auto& s : samples) c += (s.mutual_info > lo && s.mutual_info < hi);
    return static_cast<double>(c) / static_cast<double>(samples.size());
  }
  double fraction_z_below(double t) const {
    std::size_t c = 0;
    for (const auto& s : samples) c += s.z < t;
    return static_cast<double>(c) / static_cast<double>(samples.size());
  }
};

/// Random walk down the recursion: uniform bits and uniform gates from `gates`.
inline McSummary mc_trajectory_z(const CmpChannel& w, const std::vector<NamedPermutation>& gates, unsigned n,
                                 std::size_t trajectories, std::uint64_t seed, const McOptions& opt = {}) {
  if (trajectories == 0) throw std::invalid_argument("trajectories must be positive");
  if (gates.empty()) throw std::invalid_argument("gate set is empty");
  McSummary s;
  s.n = n;
  s.samples.resize(trajectories);
  parallel_for(trajectories, opt.threads, [&](std::size_t t) {
    auto rng = stream(seed, t);
    std::uniform_int_distribution<std::size_t> pick(0, gates.size() - 1);
    CmpChannel cur = w;
    for (unsigned k = 0; k < n; ++k) {
      unsigned bit = static_cast<unsigned>(rng() & 1u);
      const auto& g = gates[pick(rng)].gamma;
      cur = bit ? combine_good_cmp(cur, cur, g) : combine_bad_cmp(cur, cur, g);
      reduce_components(cur, opt.max_components);
    }
    s.samples[t] = {z(cur), mutual_info(cur)};
  });
  double sum = 0, sq = 0;
  for (const auto& x : s.samples) {
    sum += x.mutual_info;
    sq += x.mutual_info * x.mutual_info;
  }
  double m = static_cast<double>(trajectories);
  s.mean_mutual_info = sum / m;
  double var = trajectories > 1 ? std::max(0.0, (sq - m * s.mean_mutual_info * s.mean_mutual_info) / (m - 1)) : 0;
  s.stderr_mutual_info = std::sqrt(var / m);
  return s;
}

struct ProbeRow {
  unsigned n = 0;
  double rate = 0;   // estimated fraction of indices with Z <= N^{-(1+theta)}
  double bound = 0;  // 3 * sum of Z over those indices
};

inline std::vector<ProbeRow> fast_polarization_probe(const CmpChannel& w, const std::vector<NamedPermutation>& gates,
                                                     const std::vector<unsigned>& n_list, std::size_t trajectories,
                                                     std::uint64_t seed, double theta, const McOptions& opt = {}) {
  std::vector<ProbeRow> rows;
  for (unsigned n : n_list) {
    auto s = mc_trajectory_z(w, gates, n, trajectories, seed + n, opt);
    double big_n = std::ldexp(1.0, static_cast<int>(n));
    double thr = std::pow(big_n, -(1 + theta));
    double count = 0, zsum = 0;
    for (const auto& x : s.samples)
      if (x.z <= thr) {
        count += 1;
        zsum += x.z;
      }
    double m = static_cast<double>(s.samples.size());
    rows.push_back({n, count / m, 3 * big_n * zsum / m});
  }
  return rows;
}

}  // namespace qpolar
