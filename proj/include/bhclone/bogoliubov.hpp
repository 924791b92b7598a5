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

// Parameter algebra for the horizon mode mixing: physical knobs (absorption
// probability, omega/T) <-> Bogoliubov coefficients <-> Hamiltonian couplings.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <string>

#include "bhclone/errors.hpp"

namespace bhclone {

namespace detail {

inline double log_add_exp(double x, double y) {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(-std::abs(x - y)));
}

// sin(x)/x and sinh(x)/x, accurate near zero.
inline double sinc(double x) {
  return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
}
inline double sinhc(double x) {
  return std::abs(x) < 1e-4 ? 1.0 + x * x / 6.0 : std::sinh(x) / x;
}

inline void require_frequency_ratio(double omega_over_t) {
  if (!(omega_over_t > 0.0) || !std::isfinite(omega_over_t)) {
    throw NonPositiveFrequencyRatio("omega/T must be finite and > 0, got " +
                                    std::to_string(omega_over_t));
  }
}

}  // namespace detail

/// Squared Bogoliubov coefficients of one mode sector.
struct BogoliubovCoefficients {
  double alpha2 = 1.0;
  double beta2 = 0.0;
  double gamma2 = 0.0;
};

/// Late-time channel parameters. `gamma0` and `omega_over_t` are the inputs;
/// every other field is derived. xi = gamma2 / (alpha2 * beta2) is held as its
/// logarithm since it grows like exp(omega/T).
struct BlackHoleParams {
  double gamma0 = 1.0;
  double omega_over_t = 1.0;
  double alpha2 = 1.0;
  double beta2 = 0.0;
  double gamma2 = 0.0;
  double classical_absorption = 1.0;  // Gamma = alpha2 - beta2
  double log_beta2 = 0.0;
  double log_gamma2 = 0.0;
  double log_xi = 0.0;  // +inf for a perfect reflector (gamma0 == 0)

  double xi() const { return std::exp(log_xi); }
  double inverse_xi() const { return std::exp(-log_xi); }
  bool perfect_reflector() const { return gamma0 == 0.0; }
  /// beta2 / (1 + beta2): ratio of successive occupation probabilities in the thermal tail.
  double thermal_ratio() const { return beta2 / (1.0 + beta2); }
};

/// Squeezing gain g and beamsplitter phase g' of the late-time Hamiltonian.
struct CouplingConstants {
  double g = 0.0;
  double g_prime = 0.0;
};

/// Early-time (pure two-mode squeezing) parameters.
struct EarlyTimeParams {
  double omega_over_t = 1.0;
  double alpha2 = 1.0;
  double beta2 = 0.0;
  double g_k = 0.0;  // cosh^2(g_k) == alpha2

  double thermal_ratio() const { return std::exp(-omega_over_t); }
};

inline EarlyTimeParams early_time_coeffs(double omega_over_t) {
  detail::require_frequency_ratio(omega_over_t);
  EarlyTimeParams p;
  p.omega_over_t = omega_over_t;
  p.alpha2 = -1.0 / std::expm1(-omega_over_t);
  p.beta2 = 1.0 / std::expm1(omega_over_t);
  // tanh^2(g) = beta2 / alpha2 = exp(-omega/T)
  p.g_k = std::atanh(std::exp(-0.5 * omega_over_t));
  return p;
}

inline BlackHoleParams late_time_coeffs(double gamma0, double omega_over_t) {
  if (!(gamma0 >= 0.0 && gamma0 <= 1.0)) {
    throw DomainError("gamma0 must lie in [0, 1], got " + std::to_string(gamma0));
  }
  try {
    detail::require_frequency_ratio(omega_over_t);
  } catch (const NonPositiveFrequencyRatio& e) {
    throw DomainError(e.what());
  }
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  const double x = omega_over_t;
  const double boltzmann = std::exp(-x);

  BlackHoleParams p;
  p.gamma0 = gamma0;
  p.omega_over_t = x;
  p.alpha2 = gamma0;
  p.beta2 = gamma0 * boltzmann;
  p.classical_absorption = -gamma0 * std::expm1(-x);
  p.gamma2 = (1.0 - gamma0) + gamma0 * boltzmann;

  const double log_gamma0 = gamma0 > 0.0 ? std::log(gamma0) : neg_inf;
  p.log_beta2 = log_gamma0 - x;
  p.log_gamma2 = detail::log_add_exp(
      gamma0 < 1.0 ? std::log1p(-gamma0) : neg_inf, p.log_beta2);
  p.log_xi = gamma0 > 0.0 ? p.log_gamma2 - 2.0 * log_gamma0 + x
                          : std::numeric_limits<double>::infinity();
  return p;
}

/// Forward map from couplings to squared coefficients. Requires 0 <= g <= g'.
inline BogoliubovCoefficients bogoliubov_from_couplings(const CouplingConstants& c) {
  if (!(c.g >= 0.0 && c.g_prime >= c.g)) {
    throw DomainError("couplings require 0 <= g <= g'");
  }
  const double omega = std::sqrt((c.g_prime - c.g) * (c.g_prime + c.g));
  const double s = detail::sinc(omega);
  const double cos_omega = std::cos(omega);
  return {cos_omega * cos_omega, c.g * c.g * s * s, c.g_prime * c.g_prime * s * s};
}

/// Inverts the late-time coefficient relations. A perfect reflector has no
/// finite couplings; full absorption is the limit g = g' = exp(-omega/2T).
inline CouplingConstants couplings_from_params(const BlackHoleParams& p) {
  if (p.gamma0 <= 0.0) {
    throw DomainError("gamma0 = 0 has no finite couplings (perfect-reflector limit)");
  }
  if (p.gamma0 >= 1.0) {
    const double g = std::exp(-0.5 * p.omega_over_t);
    return {g, g};
  }
  const double theta = std::atan2(std::sqrt(1.0 - p.gamma0), std::sqrt(p.gamma0));
  // r = (g/g')^2
  const double r = p.beta2 / p.gamma2;
  const double one_minus_r = (1.0 - p.gamma0) / p.gamma2;
  const double g_prime = theta / std::sqrt(one_minus_r);
  return {std::sqrt(r) * g_prime, g_prime};
}

/// Signed mode coefficients of U^dagger a U = alpha a + beta b^dagger + gamma c.
/// With U = exp(-iH) and the Hamiltonians built by this library all three are
/// non-negative; the minus sign on beta in the usual textbook form corresponds
/// to the relabelling b -> -b.
struct ModeCoefficients {
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
};

inline ModeCoefficients heisenberg_coefficients(const CouplingConstants& c) {
  const double d = c.g_prime * c.g_prime - c.g * c.g;
  if (d >= 0.0) {
    const double omega = std::sqrt(d);
    const double s = detail::sinc(omega);
    return {std::cos(omega), c.g * s, c.g_prime * s};
  }
  const double omega = std::sqrt(-d);
  const double s = detail::sinhc(omega);
  return {std::cosh(omega), c.g * s, c.g_prime * s};
}

/// Hawking temperature T = 1/(8 pi M) in natural units.
inline double temperature_from_mass(double mass) {
  if (!(mass > 0.0)) throw DomainError("black hole mass must be > 0");
  return 1.0 / (8.0 * std::numbers::pi * mass);
}

}  // namespace bhclone
