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

// Closed-form output distributions and cloning fidelities.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bhclone/bogoliubov.hpp"
#include "bhclone/clone_report.hpp"
#include "bhclone/errors.hpp"
#include "bhclone/number_distribution.hpp"

namespace bhclone {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// k * log(x) with the convention 0 * log(0) = 0.
inline double times_log(int k, double log_x) { return k == 0 ? 0.0 : k * log_x; }

inline void require_clone_counts(int n, int m) {
  if (n < 1 || m < n) {
    throw DomainError("need 1 <= N <= M, got N = " + std::to_string(n) + ", M = " + std::to_string(m));
  }
}

}  // namespace detail

/// Which region-II population carries the input in the early-time scenarios.
enum class InputCarrier { particle, antiparticle };

/// Normalised post-selected wavefunction as real amplitudes over the branch index j.
///  particle input:     ket j = |M-j, j>_a |j, M-N-j>_b, j = 0..M-N
///  antiparticle input: ket j = |j, M-j>_a |M-j, j+N>_b, j = 0..M
struct PostselectedAmplitudes {
  int n = 0;
  int m = 0;
  InputCarrier carrier = InputCarrier::particle;
  std::vector<double> amplitudes;
};

inline double optimal_fidelity(int n, int m) {
  detail::require_clone_counts(n, m);
  return (m * (n + 1.0) + n) / (m * (n + 2.0));
}

inline Rational optimal_fidelity_exact(int n, int m) {
  detail::require_clone_counts(n, m);
  return Rational(m * (n + 1) + n, m * (n + 2));
}

inline double anticlone_fidelity(int n) {
  if (n < 1) throw DomainError("anticlone fidelity needs N >= 1");
  return (n + 1.0) / (n + 2.0);
}

/// Full-absorption limit: classical measure-and-prepare fidelity, independent of M and omega/T.
inline double classical_limit_fidelity(int n) {
  if (n < 1) throw DomainError("classical limit fidelity needs N >= 1");
  return (n + 1.0) / (n + 2.0);
}

inline PostselectedAmplitudes early_time_postselected_state(int n, int m) {
  if (n < 0 || m < n) throw DomainError("post-selected state needs 0 <= N <= M");
  PostselectedAmplitudes s{n, m, InputCarrier::particle, {}};
  const int terms = m - n + 1;
  std::vector<double> logw(terms);
  for (int j = 0; j < terms; ++j) logw[j] = 0.5 * detail::log_binomial(m - j, n);
  const double top = logw[0];  // C(M-j, N) decreases in j
  double norm2 = 0.0;
  for (int j = 0; j < terms; ++j) {
    s.amplitudes.push_back(std::exp(logw[j] - top));
    norm2 += s.amplitudes.back() * s.amplitudes.back();
  }
  for (double& a : s.amplitudes) a /= std::sqrt(norm2);
  return s;
}

inline PostselectedAmplitudes antiparticle_input_state(int n, int m) {
  if (n < 0 || m < 0) throw DomainError("antiparticle-input state needs N, M >= 0");
  PostselectedAmplitudes s{n, m, InputCarrier::antiparticle, {}};
  const double top = 0.5 * detail::log_binomial(m + n, n);
  double norm2 = 0.0;
  for (int j = 0; j <= m; ++j) {
    s.amplitudes.push_back(std::exp(0.5 * detail::log_binomial(j + n, n) - top));
    norm2 += s.amplitudes.back() * s.amplitudes.back();
  }
  for (double& a : s.amplitudes) a /= std::sqrt(norm2);
  return s;
}

/// Fraction of particles per clone averaged over the post-selected state:
/// sum_j ((M-j)/M) C(M-j,N) / sum_j C(M-j,N).
inline Rational early_time_clone_fidelity_exact(int n, int m) {
  detail::require_clone_counts(n, m);
  BigInt num = 0, den = 0;
  for (int j = 0; j <= m - n; ++j) {
    const BigInt w = detail::binomial(m - j, n);
    num += (m - j) * w;
    den += w;
  }
  return Rational(num, den * m);
}

/// Region-II anticlone fidelity, sum_j ((M-N-j)/(M-N)) C(M-j,N) / sum_j C(M-j,N). Needs M > N.
inline Rational early_time_anticlone_fidelity_exact(int n, int m) {
  detail::require_clone_counts(n, m);
  if (m == n) throw DomainError("no anticlones are produced when M == N");
  BigInt num = 0, den = 0;
  for (int j = 0; j <= m - n; ++j) {
    const BigInt w = detail::binomial(m - j, n);
    num += (m - n - j) * w;
    den += w;
  }
  return Rational(num, den * (m - n));
}

/// Probability that region I holds exactly M quanta after N particles are sent in early:
/// (1-q)^(N+2) q^(M-N) C(M+1, N+1) with q = exp(-omega/T).
inline double early_time_postselect_probability(int n, int m, const EarlyTimeParams& p) {
  if (n < 0 || m < 0) throw DomainError("counts must be non-negative");
  if (m < n) return 0.0;
  const double log_q = -p.omega_over_t;
  return std::exp((n + 2) * std::log1p(-std::exp(log_q)) + detail::times_log(m - n, log_q) +
                  detail::log_binomial(m + 1, n + 1));
}

inline CloneReport early_time_clone_fidelity(int n, int m, const EarlyTimeParams& p) {
  detail::require_clone_counts(n, m);
  const PostselectedAmplitudes s = early_time_postselected_state(n, m);
  CloneReport r;
  r.n = n;
  r.m = m;
  r.method = Method::analytic;
  double f = 0.0, anti = 0.0;
  for (int j = 0; j <= m - n; ++j) {
    const double w = s.amplitudes[j] * s.amplitudes[j];
    f += w * (m - j) / m;
    if (m > n) anti += w * (m - n - j) / (m - n);
  }
  r.fidelity = f;
  if (m > n) r.anticlone_fidelity = anti;
  r.postselect_probability = early_time_postselect_probability(n, m, p);
  r.diagnostics.closed_form_residual = std::abs(f - optimal_fidelity(n, m));
  return r;
}

/// p(j, M-j | N) = C(j+N, N) / C(M+N+1, N+1), j = 0..M: probability of j particles
/// and M-j antiparticles in region I after N antiparticles are sent in just inside the horizon.
inline NumberDistribution antiparticle_input_distribution(int n, int m) {
  if (n < 0 || m < 0) throw DomainError("antiparticle-input distribution needs N, M >= 0");
  NumberDistribution d;
  const double log_den = detail::log_binomial(m + n + 1, n + 1);
  for (int j = 0; j <= m; ++j) d.probabilities.push_back(std::exp(detail::log_binomial(j + n, n) - log_den));
  return d;
}

inline double antiparticle_input_clone_fidelity(int n, int m) {
  if (n < 1 || m < 1) throw DomainError("antiparticle-input fidelity needs N, M >= 1");
  const NumberDistribution d = antiparticle_input_distribution(n, m);
  double f = 0.0;
  for (int j = 0; j <= m; ++j) f += d[j] * j / m;
  return f;
}

inline Rational antiparticle_input_clone_fidelity_exact(int n, int m) {
  if (n < 1 || m < 1) throw DomainError("antiparticle-input fidelity needs N, M >= 1");
  BigInt num = 0, den = 0;
  for (int j = 0; j <= m; ++j) {
    const BigInt w = detail::binomial(j + n, n);
    num += j * w;
    den += w;
  }
  return Rational(num, den * m);
}

// ---------------------------------------------------------------------------
// Late-time single-mode distributions.
//
//   p(m|1) = alpha2/(1+beta2)^2 q^m (1 + m xi),   p(m|0) = q^m/(1+beta2),
//   q = beta2/(1+beta2).
//
// Both are evaluated as alpha2 q^m + m gamma2 q^(m-1)/(1+beta2) so that the
// perfect reflector (beta2 = 0, xi = inf) needs no special case.

inline double log_thermal_ratio(const BlackHoleParams& p) {
  return p.log_beta2 - std::log1p(p.beta2);
}

inline double log_particle_probability(const BlackHoleParams& p, int m) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  const double log_q = log_thermal_ratio(p);
  const double log_norm = -2.0 * std::log1p(p.beta2);
  const double log_alpha2 = p.alpha2 > 0.0 ? std::log(p.alpha2) : neg_inf;
  if (m == 0) return log_alpha2 + log_norm;
  const double inner = detail::log_add_exp(log_alpha2 + log_q,
                                           std::log(static_cast<double>(m)) + p.log_gamma2 - std::log1p(p.beta2));
  return detail::times_log(m - 1, log_q) + inner + log_norm;
}

inline double log_antiparticle_probability(const BlackHoleParams& p, int m) {
  return detail::times_log(m, log_thermal_ratio(p)) - std::log1p(p.beta2);
}

namespace detail {

inline void check_tail(double tail, double tail_tol, int m_max) {
  if (tail > tail_tol) {
    throw TruncationError("tail mass " + std::to_string(tail) + " beyond m = " + std::to_string(m_max) +
                          " exceeds tolerance " + std::to_string(tail_tol));
  }
}

}  // namespace detail

/// p(m|1) for m = 0..m_max with the exact geometric remainder as tail mass.
inline NumberDistribution late_time_particle_distribution(
    const BlackHoleParams& p, int m_max, double tail_tol = std::numeric_limits<double>::infinity()) {
  if (m_max < 0) throw DomainError("m_max must be >= 0");
  NumberDistribution d;
  for (int m = 0; m <= m_max; ++m) d.probabilities.push_back(std::exp(log_particle_probability(p, m)));
  const double q = p.thermal_ratio();
  const double qk = std::pow(q, m_max);
  d.tail_mass = (p.alpha2 * qk * q + p.gamma2 * ((m_max + 1) * qk / (1.0 + p.beta2) + qk * q)) / (1.0 + p.beta2);
  detail::check_tail(d.tail_mass, tail_tol, m_max);
  return d;
}

/// Thermal p(m|0) for m = 0..m_max.
inline NumberDistribution late_time_antiparticle_distribution(
    const BlackHoleParams& p, int m_max, double tail_tol = std::numeric_limits<double>::infinity()) {
  if (m_max < 0) throw DomainError("m_max must be >= 0");
  NumberDistribution d;
  for (int m = 0; m <= m_max; ++m) d.probabilities.push_back(std::exp(log_antiparticle_probability(p, m)));
  d.tail_mass = std::pow(p.thermal_ratio(), m_max + 1);
  detail::check_tail(d.tail_mass, tail_tol, m_max);
  return d;
}

/// (3 + xi + 2 xi M) / (3 (2 + xi M)), evaluated through 1/xi.
inline double late_time_fidelity_closed_form(const BlackHoleParams& p, int m) {
  if (m < 1) throw DomainError("need M >= 1");
  const double eta = p.perfect_reflector() ? 0.0 : p.inverse_xi();
  return (1.0 + 2.0 * m + 3.0 * eta) / (3.0 * (m + 2.0 * eta));
}

struct PostselectionSum {
  double fidelity = 0.0;
  double probability = 0.0;
};

/// sum_j ((M-j)/M) p(M-j|1) p(j|0) / sum_j p(M-j|1) p(j|0), together with the denominator.
inline PostselectionSum late_time_postselection_sum(const BlackHoleParams& p, int m) {
  if (m < 1) throw DomainError("need M >= 1");
  std::vector<double> log_terms(m + 1);
  double top = -std::numeric_limits<double>::infinity();
  for (int j = 0; j <= m; ++j) {
    log_terms[j] = log_particle_probability(p, m - j) + log_antiparticle_probability(p, j);
    top = std::max(top, log_terms[j]);
  }
  if (top == -std::numeric_limits<double>::infinity()) throw EmptyPostselection(m);
  double num = 0.0, den = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double w = std::exp(log_terms[j] - top);
    num += w * (m - j) / m;
    den += w;
  }
  return {num / den, std::exp(top) * den};
}

/// 1 -> M late-time cloning fidelity by the closed form, cross-checked against the
/// explicit post-selection sum (residual kept in the diagnostics).
inline CloneReport late_time_fidelity_1M(const BlackHoleParams& p, int m) {
  if (m < 1) throw DomainError("need M >= 1");
  const PostselectionSum sum = late_time_postselection_sum(p, m);
  CloneReport r;
  r.n = 1;
  r.m = m;
  r.method = Method::analytic;
  r.fidelity = late_time_fidelity_closed_form(p, m);
  r.postselect_probability = sum.probability;
  r.diagnostics.closed_form_residual = std::abs(r.fidelity - sum.fidelity);
  return r;
}

}  // namespace bhclone
