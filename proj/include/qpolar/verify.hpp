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
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qpolar/quantum.hpp"
#include "qpolar/random.hpp"

namespace qpolar::quantum {

struct CheckReport {
  std::string lemma;
  std::size_t trials = 0;
  double max_abs_dev = 0;
  bool pass = true;
  std::string worst_case;  // description of the sampled input with the largest deviation
};

inline constexpr double kCheckTolerance = 1e-8;

namespace detail {

inline double binary_entropy(double x) {
  if (x <= 0 || x >= 1) return 0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

class Tracker {
 public:
  explicit Tracker(std::string lemma, std::size_t trials) { r_.lemma = std::move(lemma), r_.trials = trials; }
  void observe(double dev, const std::string& where) {
    dev = std::abs(dev);
    if (dev > r_.max_abs_dev || !std::isfinite(dev)) {
      r_.max_abs_dev = std::isfinite(dev) ? dev : 1e300;
      r_.worst_case = where;
    }
  }
  CheckReport finish() {
    r_.pass = r_.max_abs_dev <= kCheckTolerance;
    return r_;
  }

 private:
  CheckReport r_;
};

inline std::vector<Mat> representative_unitaries() {
  std::vector<Mat> us;
  for (const auto& g : builtin_sets().representatives()) us.push_back(clifford_unitary(g.action));
  return us;
}

inline std::vector<Mat> set_unitaries(std::string_view set) {
  std::vector<Mat> us;
  for (const auto& g : named_gate_set(set)) us.push_back(clifford_unitary(g.action));
  return us;
}

inline std::string trial_label(std::uint64_t seed, std::size_t t) {
  std::ostringstream os;
  os << "seed " << seed << " trial " << t;
  return os.str();
}

}  // namespace detail

/// Mixture linearity of I and R for flagged mixtures of two random channels.
inline CheckReport verify_mixture_linearity(std::uint64_t seed, std::size_t trials) {
  detail::Tracker tr("2", trials);
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(seed, t);
    auto a = random_qubit_channel(rng), b = random_qubit_channel(rng);
    double lam = std::uniform_real_distribution<double>(0, 1)(rng);
    auto mix = flagged_mixture({{lam, a}, {1 - lam, b}});
    auto where = detail::trial_label(seed, t);
    tr.observe(coherent_info(mix) - lam * coherent_info(a) - (1 - lam) * coherent_info(b), where + " (I)");
    tr.observe(renyi_bhatt(mix) - lam * renyi_bhatt(a) - (1 - lam) * renyi_bhatt(b), where + " (R)");
  }
  return tr.finish();
}

/// I(bad) + I(good) = I(N) + I(M) for every representative.
inline CheckReport verify_coherent_conservation(std::uint64_t seed, std::size_t trials) {
  detail::Tracker tr("3", trials);
  auto us = detail::representative_unitaries();
  auto names = builtin_sets().representatives();
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(seed, t);
    auto n = random_qubit_channel(rng), m = random_qubit_channel(rng);
    double base = coherent_info(n) + coherent_info(m);
    for (std::size_t c = 0; c < us.size(); ++c)
      tr.observe(coherent_info(bad_channel(n, m, us[c])) + coherent_info(good_channel(n, m, us[c])) - base,
                 detail::trial_label(seed, t) + " gate " + names[c].name);
  }
  return tr.finish();
}

/// Mean over the 20 representatives of R(good) = 2/5 + 2/5 R(N) R(M).
inline CheckReport verify_average_r(std::uint64_t seed, std::size_t trials) {
  detail::Tracker tr("4", trials);
  auto us = detail::representative_unitaries();
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(seed, t);
    auto n = random_qubit_channel(rng), m = random_qubit_channel(rng);
    double mean = 0;
    for (const auto& u : us) mean += renyi_bhatt(good_channel(n, m, u));
    mean /= static_cast<double>(us.size());
    tr.observe(mean - (0.4 + 0.4 * renyi_bhatt(n) * renyi_bhatt(m)), detail::trial_label(seed, t));
  }
  return tr.finish();
}

/// R <= 1/2 + delta implies I >= 1 - log2(1 + 2 delta); R >= 2 - delta implies
/// I <= -1 + 4 sqrt(2 delta) + 2 h(sqrt(2 delta)). Deviation is the size of a violation.
inline CheckReport verify_r_to_i(std::uint64_t seed, std::size_t trials) {
  detail::Tracker tr("5", trials);
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(seed, t);
    // alternate generic channels with nearly noiseless and nearly useless Pauli channels
    KrausChannel ch;
    switch (t % 3) {
      case 0: ch = random_qubit_channel(rng); break;
      case 1: ch = pauli_channel(random_noisy_identity(rng, 0.9)); break;
      default: {
        auto p = random_pauli_vec(rng);
        for (auto& v : p) v = 0.25 + 0.1 * (v - 0.25);
        ch = pauli_channel(p);
      }
    }
    double r = renyi_bhatt(ch), i = coherent_info(ch);
    auto where = detail::trial_label(seed, t);
    double d_low = std::max(0.0, r - 0.5);
    tr.observe(std::max(0.0, (1 - std::log2(1 + 2 * d_low)) - i), where + " (noiseless side)");
    double d_high = std::max(0.0, 2 - r);
    double s = std::sqrt(2 * d_high);
    if (s <= 0.5) tr.observe(std::max(0.0, i - (-1 + 4 * s + 2 * detail::binary_entropy(s))), where + " (useless side)");
  }
  return tr.finish();
}

/// R of the good and bad channels is constant on left cosets of C1 (x) C1.
inline CheckReport verify_coset_invariance(std::uint64_t seed, std::size_t trials, std::size_t members = 5) {
  detail::Tracker tr("6", trials);
  const auto& group = clifford_group();
  const auto single = enumerate_single_qubit_group();
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(seed, t);
    auto n = random_qubit_channel(rng), m = random_qubit_channel(rng);
    std::uniform_int_distribution<std::size_t> pick(0, group.elements.size() - 1);
    std::uniform_int_distribution<std::size_t> pick1(0, single.elements.size() - 1);
    const Clifford2 base = group.elements[pick(rng)];
    double good_lo = 1e9, good_hi = -1e9, bad_lo = 1e9, bad_hi = -1e9;
    for (std::size_t k = 0; k < members; ++k) {
      Clifford2 c = base * tensor(single.elements[pick1(rng)], single.elements[pick1(rng)]);
      Mat u = clifford_unitary(c);
      double rg = renyi_bhatt(good_channel(n, m, u)), rb = renyi_bhatt(bad_channel(n, m, u));
      good_lo = std::min(good_lo, rg), good_hi = std::max(good_hi, rg);
      bad_lo = std::min(bad_lo, rb), bad_hi = std::max(bad_hi, rb);
    }
    tr.observe(good_hi - good_lo, detail::trial_label(seed, t) + " (good)");
    tr.observe(bad_hi - bad_lo, detail::trial_label(seed, t) + " (bad)");
  }
  return tr.finish();
}

/// Mean over L and over R of R(W good W) = 4/9 - R/9 + 4 R^2 / 9.
inline CheckReport verify_set_average(std::uint64_t seed, std::size_t trials) {
  detail::Tracker tr("7", trials);
  auto ls = detail::set_unitaries("L"), rs = detail::set_unitaries("R");
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(seed, t);
    auto w = random_qubit_channel(rng);
    double r = renyi_bhatt(w);
    double rhs = 4.0 / 9 - r / 9 + 4 * r * r / 9;
    double ml = 0, mr = 0;
    for (const auto& u : ls) ml += renyi_bhatt(good_channel(w, w, u));
    for (const auto& u : rs) mr += renyi_bhatt(good_channel(w, w, u));
    ml /= 9, mr /= 9;
    tr.observe(ml - rhs, detail::trial_label(seed, t) + " (L)");
    tr.observe(mr - rhs, detail::trial_label(seed, t) + " (R)");
  }
  return tr.finish();
}

/// R(W good_S W) = R(W good_I W) = R(W).
inline CheckReport verify_swap(std::uint64_t seed, std::size_t trials) {
  detail::Tracker tr("swap", trials);
  const Mat s = unitaries::swap(), id = identity(4);
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(seed, t);
    auto w = random_qubit_channel(rng);
    double r = renyi_bhatt(w);
    tr.observe(renyi_bhatt(good_channel(w, w, s)) - r, detail::trial_label(seed, t) + " (swap)");
    tr.observe(renyi_bhatt(good_channel(w, w, id)) - r, detail::trial_label(seed, t) + " (identity)");
  }
  return tr.finish();
}

/// H~_2(A|B) = -H^_{1/2}(A|C) for pure states on A B C.
inline CheckReport verify_duality(std::uint64_t seed, std::size_t trials) {
  detail::Tracker tr("duality", trials);
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = stream(seed, t);
    const int dc = 2 + static_cast<int>(t % 3);
    auto psi = random_pure_state({2, 2, dc}, rng);
    auto ab = partial_trace(psi, {0, 1});
    auto ac = partial_trace(psi, {0, 2});
    tr.observe(renyi2_down(ab) + petz_half_up(ac), detail::trial_label(seed, t));
  }
  return tr.finish();
}

inline std::vector<CheckReport> run_checks(std::string_view lemma, std::uint64_t seed, std::size_t trials) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  std::vector<CheckReport> out;
  bool all = lemma == "all";
  bool matched = false;
  auto run = [&](std::string_view name, auto fn) {
    if (all || lemma == name) {
      out.push_back(fn(seed, trials));
      matched = true;
    }
  };
  run("2", verify_mixture_linearity);
  run("3", verify_coherent_conservation);
  run("4", verify_average_r);
  run("5", verify_r_to_i);
  run("6", [](std::uint64_t s, std::size_t t) { return verify_coset_invariance(s, t); });
  run("7", verify_set_average);
  run("swap", verify_swap);
  run("duality", verify_duality);
  if (!matched) throw std::invalid_argument("unknown lemma: " + std::string(lemma));
  return out;
}

}  // namespace qpolar::quantum
