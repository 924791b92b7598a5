// Copyright 2026 The bhclone Authors
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

// |psi_out> = exp(-iH) |psi_in> by spectral decomposition.
//
// H is split into its irreducible blocks (connected components of the nonzero
// pattern) and only blocks touched by psi are diagonalised. A block whose
// off-diagonal entries can all be made real by a diagonal phase change is
// diagonalised as a real symmetric matrix, which also allows extended precision;
// both sector Hamiltonians are of this kind (gauge i^{n_a}).

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <vector>

#include "bhclone/bogoliubov.hpp"
#include "bhclone/detail/multiprecision.hpp"
#include "bhclone/fock_space.hpp"
#include "bhclone/hamiltonian.hpp"

namespace bhclone {

/// Working precision of the block eigensolver. Amplitudes are returned as doubles
/// either way; extended precision keeps their *relative* accuracy when they are
/// far below 1e-8 (deep post-selection).
enum class Precision { binary64, binary128, decimal50, decimal100 };

inline int precision_digits(Precision p) {
  switch (p) {
    case Precision::binary64: return 16;
    case Precision::binary128: return 34;
    case Precision::decimal50: return 50;
    case Precision::decimal100: return 100;
  }
  return 16;
}

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// Diagonal phases making every off-diagonal entry real and non-negative along a
// spanning tree; returns false if some cycle leaves an entry complex.
inline bool real_gauge(const Eigen::MatrixXcd& h, std::vector<std::complex<double>>& phase) {
  const Eigen::Index n = h.rows();
  phase.assign(static_cast<std::size_t>(n), std::complex<double>(0.0));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Eigen::Index root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    phase[root] = 1.0;
    std::queue<Eigen::Index> todo;
    todo.push(root);
    while (!todo.empty()) {
      const Eigen::Index x = todo.front();
      todo.pop();
      for (Eigen::Index y = 0; y < n; ++y) {
        const std::complex<double> hxy = h(x, y);
        if (y == x || hxy == 0.0 || seen[y]) continue;
        seen[y] = true;
        phase[y] = phase[x] * std::conj(hxy) / std::abs(hxy);
        todo.push(y);
      }
    }
  }
  for (Eigen::Index x = 0; x < n; ++x) {
    for (Eigen::Index y = 0; y < n; ++y) {
      const std::complex<double> hxy = h(x, y);
      if (hxy == 0.0) continue;
      const std::complex<double> g = std::conj(phase[x]) * hxy * phase[y];
      if (std::abs(g.imag()) > 1e-13 * std::abs(hxy)) return false;
    }
  }
  return true;
}

// Columns of psi are evolved together so one eigendecomposition serves them all.
template <class Real>
Eigen::MatrixXcd evolve_real_block(const Eigen::MatrixXd& h, const Eigen::MatrixXcd& psi) {
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const Eigen::Index n = h.rows();
  Mat a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Real(h(i, j));
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition did not converge");
  const Mat& v = es.eigenvectors();
  std::vector<Real> c(static_cast<std::size_t>(n)), s(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    using std::cos;
    using std::sin;
    c[k] = cos(es.eigenvalues()(k));
    s[k] = sin(es.eigenvalues()(k));
  }
  Eigen::MatrixXcd out(n, psi.cols());
  for (Eigen::Index col = 0; col < psi.cols(); ++col) {
    Vec re(n), im(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      re(i) = Real(psi(i, col).real());
      im(i) = Real(psi(i, col).imag());
    }
    const Vec cre = v.transpose() * re;
    const Vec cim = v.transpose() * im;
    Vec nre(n), nim(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      nre(k) = cre(k) * c[k] + cim(k) * s[k];
      nim(k) = cim(k) * c[k] - cre(k) * s[k];
    }
    const Vec ore = v * nre;
    const Vec oim = v * nim;
    for (Eigen::Index i = 0; i < n; ++i) out(i, col) = {static_cast<double>(ore(i)), static_cast<double>(oim(i))};
  }
  return out;
}

inline Eigen::MatrixXcd evolve_complex_block(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& psi) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition did not converge");
  Eigen::MatrixXcd c = es.eigenvectors().adjoint() * psi;
  for (Eigen::Index k = 0; k < c.rows(); ++k) c.row(k) *= std::exp(std::complex<double>(0.0, -es.eigenvalues()(k)));
  return es.eigenvectors() * c;
}

inline Eigen::MatrixXcd evolve_block(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& psi, Precision precision) {
  std::vector<std::complex<double>> phase;
  if (!real_gauge(h, phase)) {
    if (precision != Precision::binary64) {
      throw DomainError("extended precision needs a Hamiltonian block with a real gauge");
    }
    return evolve_complex_block(h, psi);
  }
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd hr(n, n);
  Eigen::MatrixXcd gpsi(n, psi.cols());
  for (Eigen::Index x = 0; x < n; ++x) {
    gpsi.row(x) = std::conj(phase[x]) * psi.row(x);
    for (Eigen::Index y = 0; y < n; ++y) hr(x, y) = (std::conj(phase[x]) * h(x, y) * phase[y]).real();
  }
  Eigen::MatrixXcd out;
  switch (precision) {
    case Precision::binary64: out = evolve_real_block<double>(hr, gpsi); break;
    case Precision::binary128: out = evolve_real_block<Quad>(hr, gpsi); break;
    case Precision::decimal50: out = evolve_real_block<Decimal50>(hr, gpsi); break;
    case Precision::decimal100: out = evolve_real_block<Decimal100>(hr, gpsi); break;
  }
  for (Eigen::Index x = 0; x < n; ++x) out.row(x) *= phase[x];
  return out;
}

}  // namespace detail

/// Irreducible blocks of a Hermitian operator: block id per basis index.
struct BlockStructure {
  std::vector<std::size_t> block_of;
  std::vector<std::vector<std::size_t>> members;
};

inline BlockStructure block_structure(const FockOperator& h) {
  const auto n = static_cast<std::size_t>(h.rows());
  detail::DisjointSets sets(n);
  for (int k = 0; k < h.outerSize(); ++k)
    for (FockOperator::InnerIterator it(h, k); it; ++it)
      if (it.value() != 0.0) sets.unite(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()));
  BlockStructure b;
  b.block_of.resize(n);
  std::unordered_map<std::size_t, std::size_t> id;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    auto [pos, fresh] = id.try_emplace(root, b.members.size());
    if (fresh) b.members.emplace_back();
    b.block_of[i] = pos->second;
    b.members[pos->second].push_back(i);
  }
  return b;
}

/// exp(-iH) applied to every state in psi. Each touched block is diagonalised once.
/// Throws NumericalError if an eigendecomposition fails.
inline std::vector<FockVector> evolve(const FockOperator& h, const std::vector<FockVector>& psi,
                                      Precision precision = Precision::binary64) {
  if (psi.empty()) return {};
  const FockSpace& space = psi.front().space;
  for (const FockVector& v : psi)
    if (!(v.space == space)) throw DomainError("states to evolve together must share one space");
  if (static_cast<std::size_t>(h.rows()) != space.size() || h.rows() != h.cols()) {
    throw DomainError("Hamiltonian does not act on the state's space");
  }
  const BlockStructure blocks = block_structure(h);
  std::vector<bool> touched(blocks.members.size(), false);
  for (const FockVector& v : psi)
    for (std::size_t i = 0; i < space.size(); ++i)
      if (v.amplitudes[static_cast<Eigen::Index>(i)] != 0.0) touched[blocks.block_of[i]] = true;

  std::vector<FockVector> out(psi.size(), FockVector(space));
  const auto cols = static_cast<Eigen::Index>(psi.size());
  for (std::size_t b = 0; b < blocks.members.size(); ++b) {
    if (!touched[b]) continue;
    const auto& idx = blocks.members[b];
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd local(n, n);
    Eigen::MatrixXcd local_psi(n, cols);
    for (Eigen::Index x = 0; x < n; ++x) {
      const auto gx = static_cast<Eigen::Index>(idx[x]);
      for (Eigen::Index c = 0; c < cols; ++c) local_psi(x, c) = psi[c].amplitudes[gx];
      for (Eigen::Index y = 0; y < n; ++y) local(x, y) = h.coeff(gx, static_cast<Eigen::Index>(idx[y]));
    }
    const Eigen::MatrixXcd evolved = detail::evolve_block(local, local_psi, precision);
    for (Eigen::Index x = 0; x < n; ++x)
      for (Eigen::Index c = 0; c < cols; ++c) out[c].amplitudes[static_cast<Eigen::Index>(idx[x])] = evolved(x, c);
  }
  return out;
}

inline FockVector evolve(const FockOperator& h, const FockVector& psi, Precision precision = Precision::binary64) {
  return std::move(evolve(h, std::vector<FockVector>{psi}, precision).front());
}

/// Compares <U^dag a U> with alpha<a> + beta<b^dag> + gamma<c> for one sector.
struct HeisenbergCheck {
  std::complex<double> evolved;
  std::complex<double> predicted;
  double residual = 0.0;
};

inline HeisenbergCheck heisenberg_check(const FockOperator& h, const FockVector& psi, Sector sector,
                                        const ModeCoefficients& coeffs) {
  const SectorModes m = sector_modes(sector);
  const FockVector out = evolve(h, psi);
  HeisenbergCheck r;
  r.evolved = out.inner(annihilate(out, m.a));
  r.predicted = coeffs.alpha * psi.inner(annihilate(psi, m.a)) + coeffs.beta * psi.inner(create(psi, m.b));
  if (psi.space.position(m.c)) r.predicted += coeffs.gamma * psi.inner(annihilate(psi, m.c));
  r.residual = std::abs(r.evolved - r.predicted);
  return r;
}

}  // namespace bhclone
