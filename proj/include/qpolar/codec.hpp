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
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qpolar/channel.hpp"
#include "qpolar/errors.hpp"
#include "qpolar/parallel.hpp"
#include "qpolar/polarization.hpp"
#include "qpolar/random.hpp"

namespace qpolar {

using SymbolVector = std::vector<PauliSymbol>;
using Likelihood = std::array<double, 4>;

struct PolarCodeSpec {
  unsigned n = 0;
  GateTree tree;
  std::vector<std::size_t> frozen;       // ascending
  std::vector<std::size_t> info;         // ascending
  std::vector<std::size_t> chain_subset; // ascending, subset of info, same size as frozen; empty if unused

  std::size_t length() const { return std::size_t{1} << n; }

  void validate() const {
    if (tree.depth() != n) throw std::invalid_argument("gate tree depth differs from n");
    std::vector<int> seen(length(), 0);
    for (auto i : frozen) seen.at(i) |= 1;
    for (auto i : info) {
      if (seen.at(i) & 1) throw std::invalid_argument("index is both frozen and info");
      seen.at(i) |= 2;
    }
    for (int s : seen)
      if (s == 0) throw std::invalid_argument("frozen and info sets do not cover all indices");
    if (!chain_subset.empty()) {
      if (chain_subset.size() != frozen.size()) throw std::invalid_argument("chain subset size must equal frozen size");
      for (auto i : chain_subset)
        if (seen.at(i) != 2) throw std::invalid_argument("chain subset must lie inside the info set");
    }
  }
};

inline PolarCodeSpec make_code(unsigned n, GateTree tree, const GoodSet& sets, std::vector<std::size_t> chain = {}) {
  PolarCodeSpec s{n, std::move(tree), sets.frozen, sets.info, std::move(chain)};
  std::sort(s.chain_subset.begin(), s.chain_subset.end());
  s.validate();
  return s;
}

namespace detail {

inline void encode_rec(const GateTree& tree, unsigned level, std::size_t prefix, const PauliSymbol* u, PauliSymbol* x,
                       std::size_t len) {
  if (len == 1) {
    x[0] = u[0];
    return;
  }
  const std::size_t half = len / 2;
  encode_rec(tree, level + 1, prefix << 1, u, x, half);
  encode_rec(tree, level + 1, (prefix << 1) | 1u, u + half, x + half, half);
  const auto& g = tree.node(level, prefix).gamma;
  for (std::size_t j = 0; j < half; ++j) {
    auto [a, b] = g(x[j], x[j + half]);
    x[j] = a;
    x[j + half] = b;
  }
}

inline void encode_inverse_rec(const GateTree& tree, unsigned level, std::size_t prefix, PauliSymbol* x,
                               std::size_t len) {
  if (len == 1) return;
  const std::size_t half = len / 2;
  const auto inv = tree.node(level, prefix).gamma.inverse();
  for (std::size_t j = 0; j < half; ++j) {
    auto [a, b] = inv(x[j], x[j + half]);
    x[j] = a;
    x[j + half] = b;
  }
  encode_inverse_rec(tree, level + 1, prefix << 1, x, half);
  encode_inverse_rec(tree, level + 1, (prefix << 1) | 1u, x + half, half);
}

}  // namespace detail

inline SymbolVector encode(const PolarCodeSpec& spec, const SymbolVector& u) {
  if (u.size() != spec.length()) throw std::invalid_argument("input length differs from code length");
  SymbolVector x(u.size());
  detail::encode_rec(spec.tree, 0, 0, u.data(), x.data(), u.size());
  return x;
}

inline SymbolVector encode_inverse(const PolarCodeSpec& spec, const SymbolVector& x) {
  if (x.size() != spec.length()) throw std::invalid_argument("input length differs from code length");
  SymbolVector u = x;
  detail::encode_inverse_rec(spec.tree, 0, 0, u.data(), u.size());
  return u;
}

/// Successive cancellation decoder over the classical counterpart.
///
/// Decisions follow index order. Info decisions take the most likely symbol,
/// ties to the smaller value. In genie mode the true symbol is fed forward and
/// per-index decision errors are recorded instead.
class ScDecoder {
 public:
  explicit ScDecoder(const PolarCodeSpec& spec) : spec_(spec) {}

  SymbolVector decode(const std::vector<Likelihood>& leaves, const std::vector<std::optional<PauliSymbol>>& frozen) {
    return run(leaves, frozen, nullptr, nullptr);
  }

  /// Returns per-index decision errors with all earlier symbols set to `truth`.
  std::vector<bool> genie(const std::vector<Likelihood>& leaves, const SymbolVector& truth) {
    std::vector<std::optional<PauliSymbol>> none(spec_.length());
    std::vector<bool> errors(spec_.length(), false);
    run(leaves, none, &truth, &errors);
    return errors;
  }

 private:
  SymbolVector run(const std::vector<Likelihood>& leaves, const std::vector<std::optional<PauliSymbol>>& frozen,
                   const SymbolVector* truth, std::vector<bool>* errors) {
    const std::size_t len = spec_.length();
    if (leaves.size() != len) throw std::invalid_argument("leaf count differs from code length");
    if (frozen.size() != len) throw std::invalid_argument("frozen map length differs from code length");
    frozen_ = &frozen;
    truth_ = truth;
    errors_ = errors;
    use_log_ = false;
    for (const auto& l : leaves)
      for (double v : l) {
        if (v < 0 || !std::isfinite(v)) throw std::invalid_argument("leaf likelihoods must be finite and nonnegative");
        if (v > 0 && v < 1e-300) use_log_ = true;
      }
    std::vector<Likelihood> msg(leaves);
    if (use_log_)
      for (auto& l : msg)
        for (auto& v : l) v = v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    u_.assign(len, pauli::I);
    SymbolVector x(len);
    rec(0, 0, 0, msg, x);
    return u_;
  }

  static constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  void normalize(Likelihood& l) const {
    double m = use_log_ ? kNegInf : 0.0;
    for (double v : l) m = std::max(m, v);
    if (use_log_) {
      if (m == kNegInf) return;
      for (auto& v : l) v -= m;
    } else {
      if (m <= 0) return;
      for (auto& v : l) v /= m;
    }
  }

  double mul(double a, double b) const { return use_log_ ? a + b : a * b; }

  double add(double a, double b) const {
    if (!use_log_) return a + b;
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
  }

  PauliSymbol decide(std::size_t index, const Likelihood& l) {
    bool any = false;
    unsigned best = 0;
    for (unsigned s = 0; s < 4; ++s) {
      bool positive = use_log_ ? l[s] > kNegInf : l[s] > 0;
      any |= positive;
      if (l[s] > l[best]) best = s;
    }
    if (truth_) {
      if (!any) throw decode_failure("all-zero belief at index " + std::to_string(index));
      (*errors_)[index] = PauliSymbol(best) != (*truth_)[index];
      return (*truth_)[index];
    }
    if ((*frozen_)[index]) return *(*frozen_)[index];
    if (!any) throw decode_failure("all-zero belief at index " + std::to_string(index));
    return PauliSymbol(best);
  }

  /// Decodes the sub-block at (level, prefix) from `msg` and writes its re-encoded codeword to `x`.
  void rec(unsigned level, std::size_t prefix, std::size_t offset, const std::vector<Likelihood>& msg,
           SymbolVector& x_out) {
    const std::size_t len = msg.size();
    if (len == 1) {
      auto s = decide(offset, msg[0]);
      u_[offset] = s;
      x_out[0] = s;
      return;
    }
    const std::size_t half = len / 2;
    const auto& table = spec_.tree.node(level, prefix).gamma.table();
    const double zero = use_log_ ? kNegInf : 0.0;
    std::vector<Likelihood> child(half);
    for (std::size_t j = 0; j < half; ++j) {
      const auto& l1 = msg[j];
      const auto& l2 = msg[j + half];
      for (unsigned a = 0; a < 4; ++a) {
        double acc = zero;
        for (unsigned b = 0; b < 4; ++b) {
          unsigned img = table[4 * a + b];
          acc = add(acc, mul(l1[img >> 2], l2[img & 3u]));
        }
        child[j][a] = acc;
      }
      normalize(child[j]);
    }
    SymbolVector v0(half);
    rec(level + 1, prefix << 1, offset, child, v0);
    for (std::size_t j = 0; j < half; ++j) {
      const auto& l1 = msg[j];
      const auto& l2 = msg[j + half];
      unsigned a = v0[j].value();
      for (unsigned b = 0; b < 4; ++b) {
        unsigned img = table[4 * a + b];
        child[j][b] = mul(l1[img >> 2], l2[img & 3u]);
      }
      normalize(child[j]);
    }
    SymbolVector v1(half);
    rec(level + 1, (prefix << 1) | 1u, offset + half, child, v1);
    for (std::size_t j = 0; j < half; ++j) {
      unsigned img = table[4 * v0[j].value() + v1[j].value()];
      x_out[j] = PauliSymbol(img >> 2);
      x_out[j + half] = PauliSymbol(img & 3u);
    }
  }

  const PolarCodeSpec& spec_;
  const std::vector<std::optional<PauliSymbol>>* frozen_ = nullptr;
  const SymbolVector* truth_ = nullptr;
  std::vector<bool>* errors_ = nullptr;
  bool use_log_ = false;
  SymbolVector u_;
};

inline SymbolVector sc_decode(const PolarCodeSpec& spec, const std::vector<Likelihood>& leaves,
                              const std::map<std::size_t, PauliSymbol>& frozen_values) {
  std::vector<std::optional<PauliSymbol>> fz(spec.length());
  for (auto i : spec.frozen) {
    auto it = frozen_values.find(i);
    if (it == frozen_values.end()) throw std::invalid_argument("missing frozen value for index " + std::to_string(i));
    fz[i] = it->second;
  }
  if (frozen_values.size() != spec.frozen.size()) throw std::invalid_argument("frozen values must cover exactly the frozen set");
  return ScDecoder(spec).decode(leaves, fz);
}

inline SymbolVector sample_errors(const PauliProbVec& p, std::size_t len, std::mt19937_64& rng) {
  std::discrete_distribution<unsigned> d(p.begin(), p.end());
  SymbolVector e(len);
  for (auto& s : e) s = PauliSymbol(d(rng));
  return e;
}

struct BlockOutcome {
  bool success = false;
  SymbolVector true_u;
  SymbolVector decoded_u;
};

/// Decodes a block given the error pattern. Frozen symbols are the true ones.
inline BlockOutcome decode_error_pattern(const PolarCodeSpec& spec, const PauliProbVec& p, const SymbolVector& e,
                                         const std::vector<std::optional<PauliSymbol>>* frozen_override = nullptr) {
  BlockOutcome out;
  out.true_u = encode_inverse(spec, e);
  std::vector<std::optional<PauliSymbol>> fz(spec.length());
  if (frozen_override) {
    fz = *frozen_override;
  } else {
    for (auto i : spec.frozen) fz[i] = out.true_u[i];
  }
  std::vector<Likelihood> leaves(spec.length(), p);
  try {
    out.decoded_u = ScDecoder(spec).decode(leaves, fz);
  } catch (const decode_failure&) {
    out.success = false;
    return out;
  }
  out.success = true;
  for (auto i : spec.info)
    if (out.decoded_u[i] != out.true_u[i]) {
      out.success = false;
      break;
    }
  return out;
}

inline BlockOutcome simulate_block(const PolarCodeSpec& spec, const PauliProbVec& p, std::mt19937_64& rng) {
  return decode_error_pattern(spec, p, sample_errors(p, spec.length(), rng));
}

struct MonteCarloResult {
  std::size_t trials = 0;
  std::size_t errors = 0;
  double bler = 0;
  double stderr = 0;
  std::optional<double> bound;

  bool within_bound() const { return !bound || bler <= *bound + 3 * stderr; }
};

inline double binomial_stderr(double b, std::size_t trials) {
  return std::sqrt(std::max(0.0, b * (1 - b)) / static_cast<double>(trials));
}

inline MonteCarloResult monte_carlo(const PolarCodeSpec& spec, const PauliProbVec& p, std::size_t trials,
                                    std::uint64_t seed, unsigned threads = 1,
                                    std::optional<double> bound = std::nullopt) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  std::vector<char> fail(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    auto rng = stream(seed, t);
    fail[t] = simulate_block(spec, p, rng).success ? 0 : 1;
  });
  MonteCarloResult r;
  r.trials = trials;
  r.errors = static_cast<std::size_t>(std::count(fail.begin(), fail.end(), 1));
  r.bler = static_cast<double>(r.errors) / static_cast<double>(trials);
  r.stderr = binomial_stderr(r.bler, trials);
  r.bound = bound;
  return r;
}

/// 3 * sum of Z over the info set.
inline double union_bound(const PolarizationReport& report, const std::vector<std::size_t>& info) {
  double s = 0;
  for (auto i : info) s += report.records.at(i).z;
  return 3 * s;
}

/// Per-index genie-aided decision error rates.
inline std::vector<double> genie_channel_error_rates(const PolarCodeSpec& spec, const PauliProbVec& p,
                                                     std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  const std::size_t len = spec.length();
  std::vector<std::vector<bool>> per(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    auto rng = stream(seed, t);
    auto e = sample_errors(p, len, rng);
    auto u = encode_inverse(spec, e);
    std::vector<Likelihood> leaves(len, p);
    per[t] = ScDecoder(spec).genie(leaves, u);
  });
  std::vector<double> rate(len, 0);
  for (const auto& v : per)
    for (std::size_t i = 0; i < len; ++i) rate[i] += v[i];
  for (auto& r : rate) r /= static_cast<double>(trials);
  return rate;
}

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("zero denominator");
    if (d < 0) n = -n, d = -d;
    auto g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
};

struct ChainRates {
  Rational rate;
  Rational entanglement;
};

/// R = ((k-1)(|I| - |J|) + |I|) / (kN), E = |J| / (kN).
inline ChainRates chain_rates(std::int64_t k, std::int64_t n_len, std::int64_t info, std::int64_t frozen) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (info + frozen != n_len) throw std::invalid_argument("|I| + |J| must equal N");
  if (info < frozen) throw std::invalid_argument("chaining needs |I| >= |J|");
  return {Rational::make((k - 1) * (info - frozen) + info, k * n_len), Rational::make(frozen, k * n_len)};
}

struct ChainResult {
  std::size_t trials = 0;
  double chain_bler = 0;
  std::vector<double> per_block_bler;
  double catalyst_ok = 0;  // fraction of trials whose last block returned its chain-subset symbols intact
};

/// k blocks decoded in sequence. Block 0 uses the true frozen symbols; block l
/// uses its true frozen symbols shifted by block l-1's decoding error on the
/// chain subset (the i-th frozen index is paired with the i-th chain index).
inline ChainResult simulate_chain(const PolarCodeSpec& spec, const PauliProbVec& p, std::size_t k,
                                  std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  if (spec.chain_subset.size() != spec.frozen.size()) throw std::invalid_argument("code has no chain subset");
  if (k == 0 || trials == 0) throw std::invalid_argument("k and trials must be positive");
  const std::size_t len = spec.length();
  std::vector<std::vector<char>> block_fail(trials, std::vector<char>(k, 0));
  std::vector<char> chain_fail(trials, 0), catalyst(trials, 0);
  parallel_for(trials, threads, [&](std::size_t t) {
    auto rng = stream(seed, t);
    SymbolVector residual(spec.frozen.size(), pauli::I);
    bool any = false;
    bool last_ok = true;
    for (std::size_t l = 0; l < k; ++l) {
      auto e = sample_errors(p, len, rng);
      auto true_u = encode_inverse(spec, e);
      std::vector<std::optional<PauliSymbol>> fz(len);
      for (std::size_t m = 0; m < spec.frozen.size(); ++m) fz[spec.frozen[m]] = true_u[spec.frozen[m]] ^ residual[m];
      auto out = decode_error_pattern(spec, p, e, &fz);
      block_fail[t][l] = out.success ? 0 : 1;
      any |= !out.success;
      last_ok = true;
      for (std::size_t m = 0; m < spec.chain_subset.size(); ++m) {
        std::size_t idx = spec.chain_subset[m];
        PauliSymbol got = out.decoded_u.empty() ? true_u[idx] ^ pauli::X : out.decoded_u[idx];
        residual[m] = true_u[idx] ^ got;
        if (residual[m] != pauli::I) last_ok = false;
      }
    }
    chain_fail[t] = any;
    catalyst[t] = last_ok;
  });
  ChainResult r;
  r.trials = trials;
  r.per_block_bler.assign(k, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    r.chain_bler += chain_fail[t];
    r.catalyst_ok += catalyst[t];
    for (std::size_t l = 0; l < k; ++l) r.per_block_bler[l] += block_fail[t][l];
  }
  double m = static_cast<double>(trials);
  r.chain_bler /= m;
  r.catalyst_ok /= m;
  for (auto& b : r.per_block_bler) b /= m;
  return r;
}

}  // namespace qpolar
