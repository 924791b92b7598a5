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

#include "bhclone/bogoliubov.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"

using namespace bhclone;

namespace {

const std::vector<double> kGamma0Grid = {0.01, 0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99, 1.0};
const std::vector<double> kOmegaGrid = {0.5, 1.0, 2.0, 4.0, 10.0, 20.0, 30.0};

}  // namespace

TEST(early_time_coeffs, ln2_gives_two_and_one) {
  const auto p = early_time_coeffs(std::log(2.0));
  EXPECT_NEAR(p.alpha2, 2.0, 1e-13);
  EXPECT_NEAR(p.beta2, 1.0, 1e-13);
  EXPECT_NEAR(std::cosh(p.g_k) * std::cosh(p.g_k), p.alpha2, 1e-12);
}

TEST(early_time_coeffs, zero_temperature_limit) {
  const auto p = early_time_coeffs(800.0);
  EXPECT_EQ(p.alpha2, 1.0);
  EXPECT_EQ(p.beta2, 0.0);
  EXPECT_LT(p.g_k, 1e-170);
}

TEST(early_time_coeffs, unit_symplectic_norm) {
  for (double x : {1e-3, 0.1, 0.5, 1.0, 4.0, 20.0, 100.0}) {
    const auto p = early_time_coeffs(x);
    EXPECT_NEAR(p.alpha2 - p.beta2, 1.0, 1e-12 * p.alpha2) << x;
    EXPECT_NEAR(std::sinh(p.g_k) * std::sinh(p.g_k), p.beta2, 1e-9 * (1 + p.beta2)) << x;
  }
}

TEST(early_time_coeffs, rejects_non_positive_ratio) {
  EXPECT_THROW(early_time_coeffs(0.0), NonPositiveFrequencyRatio);
  EXPECT_THROW(early_time_coeffs(-1.0), NonPositiveFrequencyRatio);
  EXPECT_THROW(early_time_coeffs(std::nan("")), NonPositiveFrequencyRatio);
}

TEST(late_time_coeffs, full_absorption_at_ln2) {
  const auto p = late_time_coeffs(1.0, std::log(2.0));
  EXPECT_NEAR(p.alpha2, 1.0, 1e-15);
  EXPECT_NEAR(p.beta2, 0.5, 1e-15);
  EXPECT_NEAR(p.classical_absorption, 0.5, 1e-15);
  EXPECT_NEAR(p.gamma2, 0.5, 1e-15);
  EXPECT_NEAR(p.xi(), 1.0, 1e-15);
}

TEST(late_time_coeffs, full_absorption_has_unit_xi) {
  for (double x : kOmegaGrid) EXPECT_NEAR(late_time_coeffs(1.0, x).log_xi, 0.0, 1e-14) << x;
  EXPECT_NEAR(late_time_coeffs(1.0, 900.0).log_xi, 0.0, 1e-12);
}

TEST(late_time_coeffs, xi_reference_point) {
  // (e^x - G (e^x - 1)) / G^2 at G = 0.95, x = 4, evaluated independently.
  EXPECT_NEAR(late_time_coeffs(0.95, 4.0).xi(), 4.0774598356312595, 1e-12);
}

TEST(late_time_coeffs, xi_survives_large_omega) {
  const auto p = late_time_coeffs(0.5, 2000.0);
  EXPECT_TRUE(std::isfinite(p.log_xi));
  EXPECT_NEAR(p.log_xi, std::log(0.5) - 2 * std::log(0.5) + 2000.0, 1e-9);
  EXPECT_EQ(p.inverse_xi(), 0.0);
}

TEST(late_time_coeffs, perfect_reflector) {
  const auto p = late_time_coeffs(0.0, 4.0);
  EXPECT_TRUE(p.perfect_reflector());
  EXPECT_EQ(p.alpha2, 0.0);
  EXPECT_EQ(p.beta2, 0.0);
  EXPECT_EQ(p.gamma2, 1.0);
  EXPECT_TRUE(std::isinf(p.log_xi));
}

TEST(late_time_coeffs, domain_errors) {
  EXPECT_THROW(late_time_coeffs(-0.1, 1.0), DomainError);
  EXPECT_THROW(late_time_coeffs(1.5, 1.0), DomainError);
  EXPECT_THROW(late_time_coeffs(0.5, 0.0), DomainError);
  EXPECT_THROW(late_time_coeffs(0.5, -3.0), DomainError);
}

TEST(late_time_coeffs, grid_invariants) {
  for (double g0 : kGamma0Grid) {
    for (double x : kOmegaGrid) {
      const auto p = late_time_coeffs(g0, x);
      EXPECT_NEAR(p.alpha2 - p.beta2 + p.gamma2, 1.0, 1e-12);
      EXPECT_NEAR(p.beta2 / p.alpha2, std::exp(-x), 1e-12);
      EXPECT_NEAR(p.gamma0 - p.classical_absorption, p.beta2, 1e-14);
      EXPECT_LE(0.0, p.classical_absorption);
      EXPECT_LE(p.classical_absorption, p.gamma0);
      EXPECT_GE(p.log_xi, -1e-15);
    }
  }
}

TEST(late_time_coeffs, xi_monotonicity) {
  for (double x : kOmegaGrid) {
    for (std::size_t i = 1; i < kGamma0Grid.size(); ++i) {
      EXPECT_LT(late_time_coeffs(kGamma0Grid[i], x).log_xi, late_time_coeffs(kGamma0Grid[i - 1], x).log_xi);
    }
  }
  for (double g0 : kGamma0Grid) {
    if (g0 == 1.0) continue;
    for (std::size_t i = 1; i < kOmegaGrid.size(); ++i) {
      EXPECT_GT(late_time_coeffs(g0, kOmegaGrid[i]).log_xi, late_time_coeffs(g0, kOmegaGrid[i - 1]).log_xi);
    }
    EXPECT_GT(late_time_coeffs(g0, 1.0).log_xi, 0.0);
  }
}

TEST(couplings_from_params, full_absorption_limit) {
  const auto c = couplings_from_params(late_time_coeffs(1.0, 2.0));
  EXPECT_NEAR(c.g, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(c.g_prime, std::exp(-1.0), 1e-15);
  // Approach the degenerate point from g' = g (1 + eps) with the forward map.
  const double g = std::exp(-1.0);
  for (double eps : {1e-4, 1e-6}) {
    const auto b = bogoliubov_from_couplings({g, g * (1 + eps)});
    EXPECT_NEAR(b.alpha2, 1.0, 10 * eps);
    EXPECT_NEAR(std::log(b.alpha2 / b.beta2), 2.0, 10 * eps);
  }
}

TEST(couplings_from_params, zero_temperature_is_a_beamsplitter) {
  const auto c = couplings_from_params(late_time_coeffs(0.6, 60.0));
  EXPECT_LT(c.g, 1e-12);
  EXPECT_NEAR(std::cos(c.g_prime) * std::cos(c.g_prime), 0.6, 1e-12);
}

TEST(couplings_from_params, rejects_perfect_reflector) {
  EXPECT_THROW(couplings_from_params(late_time_coeffs(0.0, 2.0)), DomainError);
}

TEST(couplings_from_params, round_trip_on_grid) {
  for (double g0 : kGamma0Grid) {
    for (double x : kOmegaGrid) {
      const auto p = late_time_coeffs(g0, x);
      const auto c = couplings_from_params(p);
      EXPECT_LE(c.g, c.g_prime);
      const auto b = bogoliubov_from_couplings(c);
      EXPECT_NEAR(b.alpha2, p.alpha2, 1e-10) << g0 << " " << x;
      EXPECT_NEAR(b.beta2, p.beta2, 1e-10) << g0 << " " << x;
      EXPECT_NEAR(b.gamma2, p.gamma2, 1e-10) << g0 << " " << x;
      EXPECT_NEAR(std::log(b.alpha2 / b.beta2), x, 1e-10) << g0 << " " << x;
    }
  }
}

TEST(heisenberg_coefficients, magnitudes_match_squared_coefficients) {
  for (double g0 : {0.3, 0.95, 1.0}) {
    const auto p = late_time_coeffs(g0, 4.0);
    const auto h = heisenberg_coefficients(couplings_from_params(p));
    EXPECT_NEAR(h.alpha * h.alpha, p.alpha2, 1e-12);
    EXPECT_NEAR(h.beta * h.beta, p.beta2, 1e-12);
    EXPECT_NEAR(h.gamma * h.gamma, p.gamma2, 1e-12);
  }
  // Pure squeezing: cosh / sinh.
  const auto h = heisenberg_coefficients({0.7, 0.0});
  EXPECT_NEAR(h.alpha, std::cosh(0.7), 1e-14);
  EXPECT_NEAR(h.beta, std::sinh(0.7), 1e-14);
}

TEST(temperature_from_mass, values) {
  EXPECT_NEAR(temperature_from_mass(1.0 / (8.0 * std::numbers::pi)), 1.0, 1e-15);
  EXPECT_NEAR(temperature_from_mass(1.0), 0.039788735772973836, 1e-16);
  EXPECT_LT(temperature_from_mass(1e30), 1e-30);
  EXPECT_THROW(temperature_from_mass(0.0), DomainError);
  EXPECT_THROW(temperature_from_mass(-2.0), DomainError);
}
