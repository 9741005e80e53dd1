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
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qpolar/errors.hpp"
#include "qpolar/pauli.hpp"

namespace qpolar {

/// Probabilities of I, X, Y, Z.
using PauliProbVec = std::array<double, 4>;

inline void validate(const PauliProbVec& p, double tol = 1e-12) {
  double s = 0;
  for (double v : p) {
    if (!(v >= 0)) throw std::invalid_argument("Pauli probabilities must be nonnegative");
    s += v;
  }
  if (std::abs(s - 1) > tol) throw std::invalid_argument("Pauli probabilities must sum to 1");
}

namespace presets {
inline PauliProbVec noiseless() { return {1, 0, 0, 0}; }
inline PauliProbVec depolarizing(double q) { return {1 - q, q / 3, q / 3, q / 3}; }
inline PauliProbVec dephasing(double q) { return {1 - q, 0, 0, q}; }
inline PauliProbVec bitflip(double q) { return {1 - q, q, 0, 0}; }
}  // namespace presets

/// Shannon entropy in bits, 0 log 0 = 0.
template <class Range>
double shannon_entropy(const Range& p) {
  double h = 0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

struct CmpComponent {
  double weight = 0;
  PauliProbVec p{};
};

/// Options for bringing a CMP channel to canonical form.
struct CanonicalOptions {
  double quantum = 1e-12;    // relative merge grid for probability entries
  bool translations = true;  // identify components that differ by an output relabeling p_i -> p_{i+s}
  double prune = 0;          // drop components lighter than this
};

/// Classical mixture of Pauli channels.
class CmpChannel {
 public:
  CmpChannel() = default;
  explicit CmpChannel(std::vector<CmpComponent> components) : components_(std::move(components)) {}

  static CmpChannel pauli(const PauliProbVec& p) {
    qpolar::validate(p);
    return CmpChannel({{1.0, p}});
  }

  const std::vector<CmpComponent>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }

  double total_weight() const {
    double s = 0;
    for (const auto& c : components_) s += c.weight;
    return s;
  }

  void validate(double tol = 1e-10) const {
    for (const auto& c : components_) {
      if (!(c.weight > 0)) throw std::invalid_argument("CMP weights must be positive");
      qpolar::validate(c.p, 1e-9);
    }
    if (std::abs(total_weight() - 1) > tol) throw std::invalid_argument("CMP weights must sum to 1");
  }

  /// Sorts and merges components in place; returns the pruned weight.
  double canonicalize(const CanonicalOptions& opt = {});

 private:
  std::vector<CmpComponent> components_;
};

namespace detail {

using QuantKey = std::array<std::int64_t, 4>;

struct QuantKeyHash {
  std::size_t operator()(const QuantKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto v : k) h = (h ^ static_cast<std::uint64_t>(v)) * 0x100000001b3ull;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

/// Relative grid: binary exponent plus the mantissa rounded to `quantum`.
/// Entries at or below 1e-300 share one key.
inline QuantKey quantize(const PauliProbVec& p, double quantum) {
  QuantKey k{};
  for (int i = 0; i < 4; ++i) {
    if (!(p[i] > 1e-300)) {
      k[i] = std::numeric_limits<std::int64_t>::min();
      continue;
    }
    int e = 0;
    double m = std::frexp(p[i], &e);
    k[i] = (static_cast<std::int64_t>(e + 2048) << 42) + std::llround(m / quantum);
  }
  return k;
}

inline PauliProbVec translate(const PauliProbVec& p, unsigned s) {
  return {p[0 ^ s], p[1 ^ s], p[2 ^ s], p[3 ^ s]};
}

}  // namespace detail

inline double CmpChannel::canonicalize(const CanonicalOptions& opt) {
  struct Bin {
    double weight = 0;
    PauliProbVec acc{};
  };
  std::unordered_map<detail::QuantKey, std::size_t, detail::QuantKeyHash> index;
  std::vector<std::pair<detail::QuantKey, Bin>> bins;
  index.reserve(components_.size());
  for (const auto& c : components_) {
    if (!(c.weight > 0)) continue;
    PauliProbVec v = c.p;
    const detail::QuantKey base = detail::quantize(v, opt.quantum);
    detail::QuantKey key = base;
    if (opt.translations) {
      for (unsigned s = 1; s < 4; ++s) {
        detail::QuantKey k{base[0 ^ s], base[1 ^ s], base[2 ^ s], base[3 ^ s]};
        if (k > key) {
          key = k;
          v = detail::translate(c.p, s);
        }
      }
    }
    auto [it, fresh] = index.try_emplace(key, bins.size());
    if (fresh) bins.push_back({key, {}});
    Bin& b = bins[it->second].second;
    b.weight += c.weight;
    for (int i = 0; i < 4; ++i) b.acc[i] += c.weight * v[i];
  }
  std::sort(bins.begin(), bins.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<CmpComponent> out;
  out.reserve(bins.size());
  double pruned = 0;
  for (auto& [key, b] : bins) {
    if (b.weight < opt.prune) {
      pruned += b.weight;
      continue;
    }
    PauliProbVec v{};
    for (int i = 0; i < 4; ++i) v[i] = b.acc[i] / b.weight;
    out.push_back({b.weight, v});
  }
  if (pruned > 0 && !out.empty()) {
    double total = 0;
    for (const auto& c : out) total += c.weight;
    for (auto& c : out) c.weight /= total;
  }
  components_ = std::move(out);
  return pruned;
}

/// Brings the channel down to at most `max_components` components by averaging
/// components whose vectors share a cell of a logarithmic grid, using the finest
/// grid that fits. Averaging forgets the component flag, so the result is a
/// degraded channel: every Z_d can only grow and I can only shrink.
inline void reduce_components(CmpChannel& ch, std::size_t max_components) {
  if (ch.size() <= max_components) return;
  constexpr double kFloor = 60.0;  // -log2 of the smallest distinguished entry
  const auto& comps = ch.components();
  const std::size_t m = comps.size();
  std::vector<PauliProbVec> aligned(m);
  std::vector<std::array<double, 3>> logs(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& p = comps[k].p;
    unsigned top = 0;
    for (unsigned i = 1; i < 4; ++i)
      if (p[i] > p[top]) top = i;
    aligned[k] = detail::translate(p, top);
    for (int i = 1; i < 4; ++i)
      logs[k][i - 1] = aligned[k][i] > 0 ? std::min(kFloor, -std::log2(aligned[k][i])) : kFloor;
  }
  auto key_of = [&](std::size_t k, double res) {
    detail::QuantKey key{};
    for (int i = 0; i < 3; ++i) key[i] = static_cast<std::int64_t>(std::floor(logs[k][i] * res));
    return key;
  };
  auto fits = [&](double res) {
    std::unordered_map<detail::QuantKey, char, detail::QuantKeyHash> seen;
    seen.reserve(2 * max_components);
    for (std::size_t k = 0; k < m; ++k) {
      seen.try_emplace(key_of(k, res), 0);
      if (seen.size() > max_components) return false;
    }
    return true;
  };
  // grid resolution 2^e; search the largest e in [lo, hi] that fits
  int lo = -12, hi = 8;
  if (fits(std::ldexp(1.0, hi))) {
    lo = hi;
  } else {
    while (hi - lo > 1) {
      int mid = (lo + hi) / 2;
      if (fits(std::ldexp(1.0, mid))) lo = mid; else hi = mid;
    }
  }
  const double res = std::ldexp(1.0, lo);
  std::unordered_map<detail::QuantKey, std::size_t, detail::QuantKeyHash> index;
  std::vector<CmpComponent> cells;
  for (std::size_t k = 0; k < m; ++k) {
    auto [it, fresh] = index.try_emplace(key_of(k, res), cells.size());
    if (fresh) cells.push_back({0, {}});
    auto& cell = cells[it->second];
    cell.weight += comps[k].weight;
    for (int i = 0; i < 4; ++i) cell.p[i] += comps[k].weight * aligned[k][i];
  }
  for (auto& c : cells)
    for (auto& v : c.p) v /= c.weight;
  ch = CmpChannel(std::move(cells));
  ch.canonicalize();
}

/// Bhattacharyya affinity between input offsets 0 and d.
inline double z_d(const PauliProbVec& p, PauliSymbol d) {
  double s = 0;
  for (unsigned i = 0; i < 4; ++i) s += std::sqrt(p[i] * p[i ^ d.value()]);
  return s;
}

inline double z_d(const CmpChannel& ch, PauliSymbol d) {
  double s = 0;
  for (const auto& c : ch.components()) s += c.weight * z_d(c.p, d);
  return s;
}

inline std::array<double, 3> z_all(const CmpChannel& ch) {
  std::array<double, 3> z{};
  for (const auto& c : ch.components())
    for (unsigned d = 1; d < 4; ++d) z[d - 1] += c.weight * z_d(c.p, PauliSymbol(d));
  return z;
}

inline double z(const CmpChannel& ch) {
  auto a = z_all(ch);
  return (a[0] + a[1] + a[2]) / 3;
}

inline double z_bar(const CmpChannel& ch) {
  auto a = z_all(ch);
  return std::max({a[0], a[1], a[2]});
}

inline double coherent_info(const PauliProbVec& p) { return 1 - shannon_entropy(p); }

/// Sum over components of 1 - h(p).
inline double coherent_info(const CmpChannel& ch) {
  double s = 0;
  for (const auto& c : ch.components()) s += c.weight * coherent_info(c.p);
  return s;
}

/// Mutual information of the classical counterpart at uniform input, (1 + I)/2.
inline double mutual_info(const CmpChannel& ch) { return (1 + coherent_info(ch)) / 2; }

/// Discrete memoryless channel with input alphabet {0,1,2,3}; stored column-wise,
/// column y holds W(y | u) for u = 0..3.
class QuaternaryDmc {
 public:
  using Column = std::array<double, 4>;

  QuaternaryDmc() = default;
  explicit QuaternaryDmc(std::vector<Column> columns) : cols_(std::move(columns)) {}

  const std::vector<Column>& columns() const { return cols_; }
  std::size_t outputs() const { return cols_.size(); }
  double operator()(std::size_t y, unsigned u) const { return cols_[y][u]; }

  double row_sum(unsigned u) const {
    double s = 0;
    for (const auto& c : cols_) s += c[u];
    return s;
  }

 private:
  std::vector<Column> cols_;
};

/// Output (x, i) has transition lambda_x p^x_{i+j} from input j.
inline QuaternaryDmc classical_counterpart(const CmpChannel& ch) {
  std::vector<QuaternaryDmc::Column> cols;
  cols.reserve(4 * ch.size());
  for (const auto& c : ch.components())
    for (unsigned i = 0; i < 4; ++i) {
      QuaternaryDmc::Column col{};
      for (unsigned j = 0; j < 4; ++j) col[j] = c.weight * c.p[i ^ j];
      cols.push_back(col);
    }
  return QuaternaryDmc(std::move(cols));
}

/// Uniform-input mutual information with logarithms to base 4, in [0, 1].
inline double mutual_info(const QuaternaryDmc& w) {
  double s = 0;
  for (const auto& col : w.columns()) {
    double py = (col[0] + col[1] + col[2] + col[3]) / 4;
    for (double v : col)
      if (v > 0) s += 0.25 * v * std::log2(v / py);
  }
  return s / 2;
}

/// Z_d(W) = 1/4 sum_u sum_y sqrt(W(y|u) W(y|u+d)).
inline double z_d(const QuaternaryDmc& w, PauliSymbol d) {
  double s = 0;
  for (const auto& col : w.columns())
    for (unsigned u = 0; u < 4; ++u) s += std::sqrt(col[u] * col[u ^ d.value()]);
  return s / 4;
}

inline double z(const QuaternaryDmc& w) {
  return (z_d(w, pauli::X) + z_d(w, pauli::Y) + z_d(w, pauli::Z)) / 3;
}

struct CombinedDmc {
  QuaternaryDmc bad;   // outputs (a, b), a-major
  QuaternaryDmc good;  // outputs (a, b, u), a-major
};

/// Channel combining on arbitrary quaternary channels:
///   bad(a, b | u)     = 1/4 sum_v N(a | A(u,v)) M(b | B(u,v))
///   good(a, b, u | v) = 1/4 N(a | A(u,v)) M(b | B(u,v))
inline CombinedDmc combine_generic(const QuaternaryDmc& n, const QuaternaryDmc& m, const PairPermutation& g) {
  std::vector<QuaternaryDmc::Column> bad, good;
  bad.reserve(n.outputs() * m.outputs());
  good.reserve(4 * n.outputs() * m.outputs());
  for (std::size_t a = 0; a < n.outputs(); ++a)
    for (std::size_t b = 0; b < m.outputs(); ++b) {
      QuaternaryDmc::Column col{};
      for (unsigned u = 0; u < 4; ++u)
        for (unsigned v = 0; v < 4; ++v) {
          auto [x, y] = g(PauliSymbol(u), PauliSymbol(v));
          col[u] += 0.25 * n(a, x.value()) * m(b, y.value());
        }
      bad.push_back(col);
      for (unsigned u = 0; u < 4; ++u) {
        QuaternaryDmc::Column gc{};
        for (unsigned v = 0; v < 4; ++v) {
          auto [x, y] = g(PauliSymbol(u), PauliSymbol(v));
          gc[v] = 0.25 * n(a, x.value()) * m(b, y.value());
        }
        good.push_back(gc);
      }
    }
  return {QuaternaryDmc(std::move(bad)), QuaternaryDmc(std::move(good))};
}

/// Bad channel of two CMP channels: component (x, y) has s_i = sum_j p^x_{A(i,j)} q^y_{B(i,j)}.
inline CmpChannel combine_bad_cmp(const CmpChannel& n, const CmpChannel& m, const PairPermutation& g,
                                  const CanonicalOptions& opt = {}, double* pruned = nullptr) {
  std::vector<CmpComponent> out;
  out.reserve(n.size() * m.size());
  const auto& t = g.table();
  for (const auto& cn : n.components())
    for (const auto& cm : m.components()) {
      PauliProbVec s{};
      for (unsigned i = 0; i < 4; ++i)
        for (unsigned j = 0; j < 4; ++j) {
          unsigned img = t[4 * i + j];
          s[i] += cn.p[img >> 2] * cm.p[img & 3u];
        }
      out.push_back({cn.weight * cm.weight, s});
    }
  CmpChannel ch(std::move(out));
  double pr = ch.canonicalize(opt);
  if (pruned) *pruned = pr;
  return ch;
}

/// Good channel: component (x, y, i) with weight lambda_x tau_y s_i and
/// vector t_j = p^x_{A(i,j)} q^y_{B(i,j)} / s_i.
inline CmpChannel combine_good_cmp(const CmpChannel& n, const CmpChannel& m, const PairPermutation& g,
                                   const CanonicalOptions& opt = {}, double* pruned = nullptr) {
  std::vector<CmpComponent> out;
  out.reserve(4 * n.size() * m.size());
  const auto& t = g.table();
  for (const auto& cn : n.components())
    for (const auto& cm : m.components())
      for (unsigned i = 0; i < 4; ++i) {
        PauliProbVec r{};
        double s = 0;
        for (unsigned j = 0; j < 4; ++j) {
          unsigned img = t[4 * i + j];
          r[j] = cn.p[img >> 2] * cm.p[img & 3u];
          s += r[j];
        }
        if (s <= 0) continue;
        for (auto& v : r) v /= s;
        out.push_back({cn.weight * cm.weight * s, r});
      }
  CmpChannel ch(std::move(out));
  double pr = ch.canonicalize(opt);
  if (pruned) *pruned = pr;
  return ch;
}

/// Decides whether two quaternary channels coincide up to output relabeling and
/// an input translation u -> u + s.
inline bool channels_equivalent(const QuaternaryDmc& a, const QuaternaryDmc& b, double tol = 1e-9) {
  auto canon = [tol](const QuaternaryDmc& w, unsigned shift) {
    std::vector<QuaternaryDmc::Column> cols;
    for (const auto& c : w.columns()) {
      QuaternaryDmc::Column t{c[0 ^ shift], c[1 ^ shift], c[2 ^ shift], c[3 ^ shift]};
      if (t[0] + t[1] + t[2] + t[3] > tol) cols.push_back(t);
    }
    // merge proportional columns by summation
    auto dir_less = [tol](const QuaternaryDmc::Column& x, const QuaternaryDmc::Column& y) {
      double sx = x[0] + x[1] + x[2] + x[3], sy = y[0] + y[1] + y[2] + y[3];
      for (int i = 0; i < 4; ++i) {
        double dx = x[i] / sx, dy = y[i] / sy;
        if (dx < dy - tol) return true;
        if (dx > dy + tol) return false;
      }
      return false;
    };
    std::sort(cols.begin(), cols.end(), dir_less);
    std::vector<QuaternaryDmc::Column> merged;
    for (const auto& c : cols) {
      if (!merged.empty() && !dir_less(merged.back(), c) && !dir_less(c, merged.back())) {
        for (int i = 0; i < 4; ++i) merged.back()[i] += c[i];
      } else {
        merged.push_back(c);
      }
    }
    return merged;
  };
  auto ref = canon(a, 0);
  for (unsigned s = 0; s < 4; ++s) {
    auto other = canon(b, s);
    if (other.size() != ref.size()) continue;
    bool same = true;
    for (std::size_t k = 0; k < ref.size() && same; ++k)
      for (int i = 0; i < 4; ++i)
        if (std::abs(ref[k][i] - other[k][i]) > 1e-8) {
          same = false;
          break;
        }
    if (same) return true;
  }
  return false;
}

}  // namespace qpolar
