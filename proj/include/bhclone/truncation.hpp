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

// Per-mode occupation cutoff for the Fock-space oracle.
//
// With N input quanta every mode's occupation is dominated by a negative-binomial
// law NB(N+1, q), q = n/(1+n) for the mean thermal occupation n the channel pumps
// into the busiest mode. With k the smallest value with P(X > k) < tol the cutoff is
// 2k, but at least N + M + 1 + k: the post-selected sector must fit with thermal
// headroom above it, or the cutoff distorts rare outcomes.

#include <algorithm>
#include <cmath>
#include <string>

#include "bhclone/bogoliubov.hpp"
#include "bhclone/errors.hpp"

namespace bhclone {

inline constexpr int default_nmax_ceiling = 40;

namespace detail {

// Smallest k >= 0 with P(X > k) < tol for X ~ NB(r, q), P(X = k) = C(k+r-1, k)(1-q)^r q^k.
inline int negative_binomial_cutoff(int r, double q, double tol, int limit) {
  if (q <= 0.0) return 0;
  double pk = std::pow(1.0 - q, r);
  double cdf = pk;
  for (int k = 0; k <= limit; ++k) {
    if (1.0 - cdf < tol) return k;
    pk *= q * (k + r) / (k + 1.0);
    cdf += pk;
  }
  // 1 - cdf stalls near machine epsilon; fall back on the ratio bound of the tail.
  return limit + 1;
}

inline int finish_truncation(double mean_occupation, int n, int m, double tol, int ceiling) {
  if (!(tol > 0.0)) throw DomainError("truncation tolerance must be > 0");
  if (n < 0 || m < 0) throw DomainError("copy counts must be >= 0");
  if (ceiling < 1) throw DomainError("n_max ceiling must be >= 1");
  const double q = mean_occupation / (1.0 + mean_occupation);
  const int k = negative_binomial_cutoff(n + 1, q, std::max(tol, 1e-15), 4 * ceiling);
  const int n_max = std::max(2 * k, n + m + 1 + k);
  if (n_max > ceiling) {
    throw ResourceError("required n_max " + std::to_string(n_max) + " exceeds the ceiling " + std::to_string(ceiling));
  }
  return n_max;
}

}  // namespace detail

/// Cutoff for the late-time channel. The busiest inside mode carries beta^2 from
/// spontaneous emission plus kappa^2 leaked from an occupied c mode.
inline int choose_truncation(const BlackHoleParams& p, int n, int m, double tol,
                             int ceiling = default_nmax_ceiling) {
  double mean = p.beta2;
  if (p.gamma0 > 0.0 && p.beta2 > 0.0) {
    const CouplingConstants c = couplings_from_params(p);
    const double omega = std::sqrt(std::max(0.0, c.g_prime * c.g_prime - c.g * c.g));
    const double kappa = omega < 1e-4 ? c.g * c.g_prime / 2.0 : c.g * c.g_prime * (1.0 - std::cos(omega)) / (omega * omega);
    mean += kappa * kappa;
  }
  return detail::finish_truncation(mean, n, m, tol, ceiling);
}

inline int choose_truncation(const EarlyTimeParams& p, int n, int m, double tol, int ceiling = default_nmax_ceiling) {
  return detail::finish_truncation(p.beta2, n, m, tol, ceiling);
}

}  // namespace bhclone
