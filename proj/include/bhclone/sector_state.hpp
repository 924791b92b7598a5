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

// Logical qubit inputs as sums of k / -k sector product states.
//
// N copies of sigma|1> + tau|0> are (sigma x_s^dag + tau x_t^dag)^N / sqrt(N!) |0>,
// where x_s and x_t are the carrier's two modes. They sit in opposite sectors, so
// the binomial expansion is a sum over n of
//   sqrt(C(N,n)) sigma^n tau^(N-n) |n on x_s> (x) |N-n on x_t>,
// and each factor evolves under its own sector Hamiltonian.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bhclone/errors.hpp"
#include "bhclone/evolution.hpp"
#include "bhclone/fock_space.hpp"
#include "bhclone/hamiltonian.hpp"

namespace bhclone {

/// sigma|1>_L + tau|0>_L with |1> = particle, |0> = antiparticle.
struct LogicalQubit {
  std::complex<double> sigma{1.0};
  std::complex<double> tau{0.0};

  void validate() const {
    if (std::abs(std::norm(sigma) + std::norm(tau) - 1.0) > 1e-12) {
      throw DomainError("logical qubit amplitudes must satisfy |sigma|^2 + |tau|^2 = 1");
    }
  }
  static LogicalQubit particle() { return {1.0, 0.0}; }
  static LogicalQubit antiparticle() { return {0.0, 1.0}; }
};

/// Which family of modes carries the input quanta.
enum class Carrier { a, b, c };

struct CarrierModes {
  Mode sigma;  // holds the |1>_L quanta
  Mode tau;    // holds the |0>_L quanta
};

inline CarrierModes carrier_modes(Carrier c) {
  switch (c) {
    case Carrier::a: return {Mode::a_k, Mode::a_minus_k};
    case Carrier::b: return {Mode::b_k, Mode::b_minus_k};
    case Carrier::c: return {Mode::c_k, Mode::c_minus_k};
  }
  return {Mode::a_k, Mode::a_minus_k};
}

/// sum_n weights[n] * k[n] (x) minus_k[n]; both sector factors of a branch are normalised.
struct SectorProductState {
  std::vector<std::complex<double>> weights;
  std::vector<FockVector> k;
  std::vector<FockVector> minus_k;

  std::size_t branches() const { return weights.size(); }
  const std::vector<FockVector>& factors(Sector s) const { return s == Sector::k ? k : minus_k; }
};

namespace detail {

inline double binomial_double(int n, int k) {
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

inline std::complex<double> ipow(std::complex<double> z, int n) {
  std::complex<double> r = 1.0;
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

inline FockVector single_mode_excitation(const FockSpace& s, Mode m, int quanta) {
  std::vector<int> occ(s.mode_count(), 0);
  if (quanta > 0) occ[s.require(m)] = quanta;
  return FockVector::basis(s, occ);
}

}  // namespace detail

/// Branches with zero weight are dropped. Throws DomainError for an unnormalised qubit,
/// TruncationError if N exceeds either space's cutoff.
inline SectorProductState sector_product_state(Carrier carrier, const LogicalQubit& q, int n, const FockSpace& k_space,
                                               const FockSpace& minus_k_space) {
  q.validate();
  if (n < 0) throw DomainError("input copy count must be >= 0");
  const CarrierModes cm = carrier_modes(carrier);
  const bool sigma_in_k = sector_of(cm.sigma) == Sector::k;
  SectorProductState out;
  for (int i = 0; i <= n; ++i) {
    const std::complex<double> w =
        std::sqrt(detail::binomial_double(n, i)) * detail::ipow(q.sigma, i) * detail::ipow(q.tau, n - i);
    if (w == 0.0) continue;
    const int k_quanta = sigma_in_k ? i : n - i;
    const Mode k_mode = sigma_in_k ? cm.sigma : cm.tau;
    const Mode mk_mode = sigma_in_k ? cm.tau : cm.sigma;
    out.weights.push_back(w);
    out.k.push_back(detail::single_mode_excitation(k_space, k_mode, k_quanta));
    out.minus_k.push_back(detail::single_mode_excitation(minus_k_space, mk_mode, n - k_quanta));
  }
  return out;
}

/// Applies the sector evolutions branch by branch (one eigendecomposition per block and sector).
inline SectorProductState evolve(const FockOperator& h_k, const FockOperator& h_minus_k, const SectorProductState& psi,
                                 Precision precision = Precision::binary64) {
  return {psi.weights, evolve(h_k, psi.k, precision), evolve(h_minus_k, psi.minus_k, precision)};
}

/// The same state on one monolithic space holding the modes of both sectors.
inline FockVector assemble(const SectorProductState& psi) {
  if (psi.branches() == 0) throw DomainError("empty sector product state");
  const FockSpace& sk = psi.k.front().space;
  const FockSpace& smk = psi.minus_k.front().space;
  if (sk.n_max() != smk.n_max()) throw DomainError("sector spaces must share one cutoff");
  std::vector<Mode> modes = sk.modes();
  modes.insert(modes.end(), smk.modes().begin(), smk.modes().end());
  FockSpace full(modes, sk.n_max());
  FockVector out(full);
  // Row-major layout: the k-sector index is the slow one.
  const auto inner = static_cast<Eigen::Index>(smk.size());
  for (std::size_t b = 0; b < psi.branches(); ++b)
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(sk.size()); ++i) {
      const std::complex<double> ak = psi.weights[b] * psi.k[b].amplitudes[i];
      if (ak != 0.0) out.amplitudes.segment(i * inner, inner) += ak * psi.minus_k[b].amplitudes;
    }
  return out;
}

/// Joint density matrix of two modes taken from opposite sectors, indexed
/// n_first * levels + n_second. Computed per sector on branch outer products:
///   rho = sum_ij w_i conj(w_j) R_first[i][j] (x) R_second[i][j].
inline Eigen::MatrixXcd two_mode_reduced_state(const SectorProductState& psi, Mode first, Mode second) {
  if (sector_of(first) == sector_of(second)) throw DomainError("the two modes must come from opposite sectors");
  if (psi.branches() == 0) throw DomainError("empty sector product state");
  const auto& f = psi.factors(sector_of(first));
  const auto& s = psi.factors(sector_of(second));
  const auto d = static_cast<Eigen::Index>(f.front().space.levels());
  if (static_cast<Eigen::Index>(s.front().space.levels()) != d) throw DomainError("sector spaces must share one cutoff");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (std::size_t i = 0; i < psi.branches(); ++i)
    for (std::size_t j = 0; j < psi.branches(); ++j) {
      const std::complex<double> w = psi.weights[i] * std::conj(psi.weights[j]);
      const Eigen::MatrixXcd rf = reduced_density(f[i], f[j], first);
      const Eigen::MatrixXcd rs = reduced_density(s[i], s[j], second);
      for (Eigen::Index x = 0; x < d; ++x)
        for (Eigen::Index y = 0; y < d; ++y) rho.block(x * d, y * d, d, d) += (w * rf(x, y)) * rs;
    }
  return rho;
}

/// Outside the horizon: (a_k particle, a_-k antiparticle).
inline Eigen::MatrixXcd region1_reduced_state(const SectorProductState& psi) {
  return two_mode_reduced_state(psi, Mode::a_k, Mode::a_minus_k);
}

/// Inside the horizon: (b_k particle, b_-k antiparticle).
inline Eigen::MatrixXcd region2_reduced_state(const SectorProductState& psi) {
  return two_mode_reduced_state(psi, Mode::b_k, Mode::b_minus_k);
}

/// Largest probability any branch factor leaves on the cutoff; an estimate of truncation loss.
inline double boundary_mass(const SectorProductState& psi) {
  double m = 0.0;
  for (const auto& v : psi.k) m = std::max(m, v.boundary_mass());
  for (const auto& v : psi.minus_k) m = std::max(m, v.boundary_mass());
  return m;
}

}  // namespace bhclone
