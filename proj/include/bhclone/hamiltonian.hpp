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

// Sector Hamiltonians on a truncated Fock space:
//   early:  H = i g (a^dag b^dag - a b)
//   late:   H = i g (a^dag b^dag - a b) + i g' (a^dag c - a c^dag)
// for (a, b, c) = (a_k, b_-k, c_k) or (a_-k, b_k, c_-k).

#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <vector>

#include "bhclone/bogoliubov.hpp"
#include "bhclone/fock_space.hpp"

namespace bhclone {

using FockOperator = Eigen::SparseMatrix<std::complex<double>>;

namespace detail {

using Triplets = std::vector<Eigen::Triplet<std::complex<double>>>;

inline void add_squeezing(Triplets& t, const FockSpace& s, std::size_t pa, std::size_t pb, double g) {
  if (g == 0.0) return;
  const int top = s.n_max();
  const std::size_t step = s.stride(pa) + s.stride(pb);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int na = s.occupation(i, pa), nb = s.occupation(i, pb);
    if (na < top && nb < top) {
      t.emplace_back(static_cast<int>(i + step), static_cast<int>(i), std::complex<double>(0.0, g * std::sqrt((na + 1.0) * (nb + 1.0))));
    }
    if (na > 0 && nb > 0) {
      t.emplace_back(static_cast<int>(i - step), static_cast<int>(i), std::complex<double>(0.0, -g * std::sqrt(1.0 * na * nb)));
    }
  }
}

inline void add_beamsplitter(Triplets& t, const FockSpace& s, std::size_t pa, std::size_t pc, double gp) {
  if (gp == 0.0) return;
  const int top = s.n_max();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int na = s.occupation(i, pa), nc = s.occupation(i, pc);
    if (na < top && nc > 0) {
      t.emplace_back(static_cast<int>(i + s.stride(pa) - s.stride(pc)), static_cast<int>(i),
                     std::complex<double>(0.0, gp * std::sqrt((na + 1.0) * nc)));
    }
    if (na > 0 && nc < top) {
      t.emplace_back(static_cast<int>(i - s.stride(pa) + s.stride(pc)), static_cast<int>(i),
                     std::complex<double>(0.0, -gp * std::sqrt(na * (nc + 1.0))));
    }
  }
}

inline FockOperator from_triplets(const FockSpace& s, const Triplets& t) {
  const auto n = static_cast<Eigen::Index>(s.size());
  FockOperator h(n, n);
  h.setFromTriplets(t.begin(), t.end());
  h.makeCompressed();
  return h;
}

}  // namespace detail

inline FockOperator build_early_hamiltonian(Sector sector, double g, const FockSpace& space) {
  if (g < 0.0) throw DomainError("squeezing gain must be >= 0");
  const SectorModes m = sector_modes(sector);
  detail::Triplets t;
  detail::add_squeezing(t, space, space.require(m.a), space.require(m.b), g);
  return detail::from_triplets(space, t);
}

/// Couplings are used as given (no g <= g' check) so that sign or magnitude
/// mutations can be built deliberately.
inline FockOperator build_late_hamiltonian(Sector sector, const CouplingConstants& c, const FockSpace& space) {
  const SectorModes m = sector_modes(sector);
  const std::size_t pa = space.require(m.a), pb = space.require(m.b), pc = space.require(m.c);
  detail::Triplets t;
  detail::add_squeezing(t, space, pa, pb, c.g);
  detail::add_beamsplitter(t, space, pa, pc, c.g_prime);
  return detail::from_triplets(space, t);
}

/// max |H - H^dagger|
inline double hermiticity_error(const FockOperator& h) {
  const FockOperator d = h - FockOperator(h.adjoint());
  double e = 0.0;
  for (int k = 0; k < d.outerSize(); ++k)
    for (FockOperator::InnerIterator it(d, k); it; ++it) e = std::max(e, std::abs(it.value()));
  return e;
}

inline FockVector annihilate(const FockVector& v, Mode m) {
  const FockSpace& s = v.space;
  const std::size_t p = s.require(m);
  FockVector out(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int n = s.occupation(i, p);
    if (n > 0) out.amplitudes[static_cast<Eigen::Index>(i - s.stride(p))] += std::sqrt(1.0 * n) * v.amplitudes[static_cast<Eigen::Index>(i)];
  }
  return out;
}

/// Creation operator; amplitude pushed past the cutoff is dropped.
inline FockVector create(const FockVector& v, Mode m) {
  const FockSpace& s = v.space;
  const std::size_t p = s.require(m);
  FockVector out(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const int n = s.occupation(i, p);
    if (n < s.n_max()) out.amplitudes[static_cast<Eigen::Index>(i + s.stride(p))] += std::sqrt(n + 1.0) * v.amplitudes[static_cast<Eigen::Index>(i)];
  }
  return out;
}

/// <N_a + N_c - N_b> for one sector; conserved by both sector Hamiltonians.
inline double sector_charge(const FockVector& v, Sector sector) {
  const SectorModes m = sector_modes(sector);
  double q = v.mean_occupation(m.a) - v.mean_occupation(m.b);
  if (v.space.position(m.c)) q += v.mean_occupation(m.c);
  return q;
}

}  // namespace bhclone
