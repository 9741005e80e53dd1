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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpolar/clifford.hpp"
#include "qpolar/channel.hpp"

namespace qpolar::quantum {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPinvThreshold = 1e-12;

/// Density matrix on a tensor product with the first factor most significant.
struct DensityOperator {
  Mat m;
  std::vector<int> dims;

  int dim() const { return static_cast<int>(m.rows()); }

  void validate(double tol = 1e-10) const {
    int d = 1;
    for (int x : dims) d *= x;
    if (d != m.rows() || m.rows() != m.cols()) throw std::invalid_argument("density operator dimension mismatch");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("density operator not Hermitian");
    if (std::abs(m.trace() - cd(1)) > tol) throw std::invalid_argument("density operator trace is not 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(m);
    if (es.eigenvalues().minCoeff() < -tol) throw std::invalid_argument("density operator not positive");
  }
};

struct KrausChannel {
  std::vector<Mat> kraus;  // each out_dim x in_dim
  int in_dim = 0;
  int out_dim = 0;

  KrausChannel() = default;
  explicit KrausChannel(std::vector<Mat> ks) : kraus(std::move(ks)) {
    if (kraus.empty()) throw std::invalid_argument("channel needs at least one Kraus operator");
    in_dim = static_cast<int>(kraus[0].cols());
    out_dim = static_cast<int>(kraus[0].rows());
    for (const auto& k : kraus)
      if (k.rows() != out_dim || k.cols() != in_dim) throw std::invalid_argument("Kraus operators differ in shape");
  }

  double completeness_error() const {
    Mat s = Mat::Zero(in_dim, in_dim);
    for (const auto& k : kraus) s += k.adjoint() * k;
    return (s - Mat::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff();
  }

  void validate(double tol = 1e-10) const {
    if (completeness_error() > tol) throw std::invalid_argument("Kraus operators are not trace preserving");
  }
};

inline Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

inline Mat identity(int d) { return Mat::Identity(d, d); }

/// Hermitian Pauli matrices indexed I, X, Y, Z.
inline Mat pauli_matrix(PauliSymbol s) {
  Mat m(2, 2);
  switch (s.value()) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cd(0, -1), cd(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline Mat pauli_matrix(PauliSymbol a, PauliSymbol b) { return kron(pauli_matrix(a), pauli_matrix(b)); }

inline DensityOperator max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  Vec v = Vec::Zero(d * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return {v * v.adjoint(), {d, d}};
}

/// Keeps the listed subsystems (in increasing order) and traces out the rest.
inline DensityOperator partial_trace(const DensityOperator& rho, const std::vector<int>& keep) {
  const int n = static_cast<int>(rho.dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) kept.at(k) = true;
  std::vector<int> kd, td;
  for (int i = 0; i < n; ++i) (kept[i] ? kd : td).push_back(rho.dims[i]);
  int dk = 1, dt = 1;
  for (int x : kd) dk *= x;
  for (int x : td) dt *= x;
  // flat index -> (kept index, traced index)
  const int total = rho.dim();
  std::vector<int> ki(total), ti(total);
  for (int f = 0; f < total; ++f) {
    int rem = f, kidx = 0, tidx = 0, kmul = 1, tmul = 1;
    for (int i = n - 1; i >= 0; --i) {
      int digit = rem % rho.dims[i];
      rem /= rho.dims[i];
      if (kept[i]) {
        kidx += digit * kmul;
        kmul *= rho.dims[i];
      } else {
        tidx += digit * tmul;
        tmul *= rho.dims[i];
      }
    }
    ki[f] = kidx;
    ti[f] = tidx;
  }
  Mat out = Mat::Zero(dk, dk);
  for (int r = 0; r < total; ++r)
    for (int c = 0; c < total; ++c)
      if (ti[r] == ti[c]) out(ki[r], ki[c]) += rho.m(r, c);
  return {out, kd};
}

/// Applies the channel to one tensor factor.
inline DensityOperator apply_channel(const KrausChannel& ch, const DensityOperator& rho, int subsystem) {
  if (subsystem < 0 || subsystem >= static_cast<int>(rho.dims.size()))
    throw std::invalid_argument("subsystem index out of range");
  if (rho.dims[subsystem] != ch.in_dim) throw std::invalid_argument("channel input dimension mismatch");
  int before = 1, after = 1;
  for (int i = 0; i < subsystem; ++i) before *= rho.dims[i];
  for (std::size_t i = subsystem + 1; i < rho.dims.size(); ++i) after *= rho.dims[i];
  DensityOperator out;
  out.dims = rho.dims;
  out.dims[subsystem] = ch.out_dim;
  const int d = before * ch.out_dim * after;
  out.m = Mat::Zero(d, d);
  for (const auto& k : ch.kraus) {
    Mat full = kron(kron(identity(before), k), identity(after));
    out.m += full * rho.m * full.adjoint();
  }
  return out;
}

/// Stinespring V = sum_k K_k (x) |k>_E; returns the channel to E.
inline KrausChannel complementary(const KrausChannel& ch) {
  const int env = static_cast<int>(ch.kraus.size());
  std::vector<Mat> fs;
  for (int j = 0; j < ch.out_dim; ++j) {
    Mat f(env, ch.in_dim);
    for (int k = 0; k < env; ++k) f.row(k) = ch.kraus[k].row(j);
    fs.push_back(f);
  }
  return KrausChannel(std::move(fs));
}

inline Eigen::VectorXd eigenvalues(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double von_neumann_entropy(const Mat& m) {
  auto ev = eigenvalues(m);
  double h = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0) h -= ev(i) * std::log2(ev(i));
  return h;
}

/// f applied to the eigenvalues of a Hermitian matrix.
template <class F>
Mat spectral(const Mat& m, F f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  Eigen::VectorXcd fv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) fv(i) = f(ev(i));
  return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

/// Square root on the support; eigenvalues below the pseudo-inverse threshold count as zero.
inline Mat psd_sqrt(const Mat& m) {
  return spectral(m, [](double x) { return x > kPinvThreshold ? std::sqrt(x) : 0.0; });
}

inline Mat pinv_sqrt(const Mat& m) {
  return spectral(m, [](double x) { return x > kPinvThreshold ? 1 / std::sqrt(x) : 0.0; });
}

/// (id (x) ch)(Phi) with the reference first.
inline DensityOperator choi_state(const KrausChannel& ch) {
  return apply_channel(ch, max_entangled(ch.in_dim), 1);
}

/// Conditional entropy H(A|B) of a bipartite state with dims {dA, dB}.
inline double conditional_entropy(const DensityOperator& rho) {
  return von_neumann_entropy(rho.m) - von_neumann_entropy(partial_trace(rho, {1}).m);
}

/// I(N) = H(B) - H(AB) on half of a maximally entangled state.
inline double coherent_info(const KrausChannel& ch) {
  if (ch.in_dim != 2) throw std::invalid_argument("coherent information is defined here for qubit inputs");
  return -conditional_entropy(choi_state(ch));
}

/// Sandwiched conditional entropy of order 2, H~_2(A|B) for rho on A (x) B.
inline double renyi2_down(const DensityOperator& rho) {
  if (rho.dims.size() != 2) throw std::invalid_argument("bipartite state expected");
  Mat rb = partial_trace(rho, {1}).m;
  Mat s = kron(identity(rho.dims[0]), pinv_sqrt(rb));
  Mat t = s * rho.m * s;
  return -std::log2((t * rho.m).trace().real());
}

/// Petz conditional entropy of order 1/2, H^_{1/2}(A|B) = log2 tr[(tr_A sqrt(rho))^2].
inline double petz_half_up(const DensityOperator& rho) {
  if (rho.dims.size() != 2) throw std::invalid_argument("bipartite state expected");
  DensityOperator root{psd_sqrt(rho.m), rho.dims};
  Mat x = partial_trace(root, {1}).m;
  return std::log2((x * x).trace().real());
}

/// The objective of the Petz-1/2 supremum at a given sigma_B: 2 log2 tr[sqrt(rho) (1 (x) sqrt(sigma))].
inline double petz_half_objective(const DensityOperator& rho, const Mat& sigma) {
  Mat s = kron(identity(rho.dims[0]), psd_sqrt(sigma));
  return 2 * std::log2((psd_sqrt(rho.m) * s).trace().real());
}

/// R(N) = 2^{-H~_2(A|E)} on (id (x) N^c)(Phi).
inline double renyi_bhatt(const KrausChannel& ch) {
  if (ch.in_dim != 2) throw std::invalid_argument("R is defined here for qubit inputs");
  return std::exp2(-renyi2_down(choi_state(complementary(ch))));
}

/// R(N) = 2^{H^_{1/2}(A|B)} on (id (x) N)(Phi).
inline double renyi_bhatt_petz(const KrausChannel& ch) { return std::exp2(petz_half_up(choi_state(ch))); }

inline KrausChannel identity_channel(int d = 2) { return KrausChannel({identity(d)}); }

inline KrausChannel pauli_channel(const PauliProbVec& p) {
  std::vector<Mat> ks;
  for (unsigned i = 0; i < 4; ++i)
    if (p[i] > 0) ks.push_back(std::sqrt(p[i]) * pauli_matrix(PauliSymbol(i)));
  return KrausChannel(std::move(ks));
}

/// Channel whose Kraus operators are the weighted components tagged by an orthogonal flag in the output.
inline KrausChannel flagged_mixture(const std::vector<std::pair<double, KrausChannel>>& parts) {
  const int flags = static_cast<int>(parts.size());
  std::vector<Mat> ks;
  for (int x = 0; x < flags; ++x) {
    Mat e = Mat::Zero(flags, 1);
    e(x, 0) = 1;
    for (const auto& k : parts[x].second.kraus) ks.push_back(std::sqrt(parts[x].first) * kron(e, k));
  }
  return KrausChannel(std::move(ks));
}

inline KrausChannel cmp_channel(const CmpChannel& ch) {
  std::vector<std::pair<double, KrausChannel>> parts;
  for (const auto& c : ch.components()) parts.push_back({c.weight, pauli_channel(c.p)});
  return flagged_mixture(parts);
}

inline Mat haar_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0, 1);
  Mat z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ() * identity(d);
  Mat r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    cd ph = r(i, i) / std::abs(r(i, i));
    q.col(i) *= ph;
  }
  return q;
}

/// Random qubit channel from a Haar isometry into output (x) environment.
inline KrausChannel random_qubit_channel(std::mt19937_64& rng, int env = 2) {
  Mat u = haar_unitary(2 * env, rng);
  Mat v = u.leftCols(2);  // rows indexed e * 2 + b
  std::vector<Mat> ks;
  for (int e = 0; e < env; ++e) ks.push_back(v.block(2 * e, 0, 2, 2));
  return KrausChannel(std::move(ks));
}

inline DensityOperator random_pure_state(const std::vector<int>& dims, std::mt19937_64& rng) {
  int d = 1;
  for (int x : dims) d *= x;
  std::normal_distribution<double> g(0, 1);
  Vec v(d);
  for (int i = 0; i < d; ++i) v(i) = cd(g(rng), g(rng));
  v.normalize();
  return {v * v.adjoint(), dims};
}

inline DensityOperator random_mixed_state(const std::vector<int>& dims, std::mt19937_64& rng) {
  int d = 1;
  for (int x : dims) d *= x;
  auto pure = random_pure_state({d, d}, rng);
  DensityOperator big{pure.m, {d, d}};
  auto r = partial_trace(big, {0});
  return {r.m, dims};
}

// Gate unitaries.
namespace unitaries {

inline Mat hadamard() {
  Mat m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}
inline Mat phase() {
  Mat m(2, 2);
  m << 1, 0, 0, cd(0, 1);
  return m;
}
/// (1 - i)(1 + iP)/2
inline Mat sqrt_pauli(PauliSymbol p) {
  return cd(1, -1) * (identity(2) + cd(0, 1) * pauli_matrix(p)) / 2.0;
}
/// Control on the first tensor factor.
inline Mat cnot12() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}
inline Mat cnot21() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(3, 1) = m(2, 2) = m(1, 3) = 1;
  return m;
}
inline Mat swap() {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(2, 1) = m(1, 2) = m(3, 3) = 1;
  return m;
}

inline Mat generator(Generator g) {
  switch (g) {
    case Generator::kH1: return kron(hadamard(), identity(2));
    case Generator::kS1: return kron(phase(), identity(2));
    case Generator::kH2: return kron(identity(2), hadamard());
    case Generator::kS2: return kron(identity(2), phase());
    case Generator::kCnot12: return cnot12();
  }
  throw std::logic_error("unknown generator");
}

}  // namespace unitaries

/// Reads off the signed conjugation action of a two-qubit unitary. Throws if U is not Clifford.
inline Clifford2 action_of(const Mat& u) {
  Clifford2::Table t{};
  std::uint32_t neg = 0;
  for (unsigned p = 0; p < 16; ++p) {
    Mat img = u * pauli_matrix(PauliSymbol(p >> 2), PauliSymbol(p & 3u)) * u.adjoint();
    bool found = false;
    for (unsigned q = 0; q < 16 && !found; ++q) {
      cd c = (pauli_matrix(PauliSymbol(q >> 2), PauliSymbol(q & 3u)) * img).trace() / 4.0;
      if (std::abs(std::abs(c) - 1) < 1e-9) {
        if (std::abs(c.imag()) > 1e-9) throw std::invalid_argument("non-Hermitian conjugation image");
        t[p] = static_cast<std::uint8_t>(q);
        if (c.real() < 0) neg |= 1u << p;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("unitary is not Clifford");
  }
  return Clifford2(t, neg);
}

inline Clifford1 action_of_single(const Mat& u) {
  Clifford1::Table t{};
  std::uint32_t neg = 0;
  for (unsigned p = 0; p < 4; ++p) {
    Mat img = u * pauli_matrix(PauliSymbol(p)) * u.adjoint();
    bool found = false;
    for (unsigned q = 0; q < 4 && !found; ++q) {
      cd c = (pauli_matrix(PauliSymbol(q)) * img).trace() / 2.0;
      if (std::abs(std::abs(c) - 1) < 1e-9) {
        t[p] = static_cast<std::uint8_t>(q);
        if (c.real() < 0) neg |= 1u << p;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("unitary is not Clifford");
  }
  return Clifford1(t, neg);
}

/// Group enumeration shared by the synthesis routines.
inline const CliffordGroup<2>& clifford_group() {
  static const CliffordGroup<2> group = enumerate_clifford_group();
  return group;
}

/// A unitary realizing the action, up to global phase, from the generator word
/// recorded during enumeration.
inline Mat clifford_unitary(const Clifford2& c) {
  const auto& g = clifford_group();
  const auto& word = g.words[g.index_of(c)];
  Mat u = identity(4);
  for (auto gen : word) u = unitaries::generator(gen) * u;
  return u;
}

/// (N (x) M) U (rho (x) 1/2) U^dagger: Kraus (N_a (x) M_b) U (1 (x) |v>) / sqrt(2).
inline KrausChannel bad_channel(const KrausChannel& n, const KrausChannel& m, const Mat& u) {
  std::vector<Mat> ks;
  for (int v = 0; v < 2; ++v) {
    Mat ket = Mat::Zero(2, 1);
    ket(v, 0) = 1;
    Mat embed = u * kron(identity(2), ket) / std::sqrt(2.0);
    for (const auto& a : n.kraus)
      for (const auto& b : m.kraus) ks.push_back(kron(a, b) * embed);
  }
  return KrausChannel(std::move(ks));
}

/// (N (x) M) U (Phi_{R1 U1} (x) rho) U^dagger with outputs ordered R1, B1, B2.
inline KrausChannel good_channel(const KrausChannel& n, const KrausChannel& m, const Mat& u) {
  Mat phi = Mat::Zero(8, 2);  // |u2> -> sum_r |r>_R |r>_U1 |u2> / sqrt(2)
  for (int r = 0; r < 2; ++r)
    for (int x = 0; x < 2; ++x) phi(r * 4 + r * 2 + x, x) = 1 / std::sqrt(2.0);
  Mat embed = kron(identity(2), u) * phi;
  std::vector<Mat> ks;
  for (const auto& a : n.kraus)
    for (const auto& b : m.kraus) ks.push_back(kron(identity(2), kron(a, b)) * embed);
  return KrausChannel(std::move(ks));
}

}  // namespace qpolar::quantum
