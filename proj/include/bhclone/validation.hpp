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

// Self-check suite: closed forms against each other, the Fock-space oracle against
// the closed forms, limits, universality, figure shapes and structural invariants.
// Every check is tagged with the acceptance criterion (1..9) it covers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bhclone/analytic.hpp"
#include "bhclone/bogoliubov.hpp"
#include "bhclone/cloning.hpp"
#include "bhclone/errors.hpp"
#include "bhclone/evolution.hpp"
#include "bhclone/hamiltonian.hpp"
#include "bhclone/sector_state.hpp"
#include "bhclone/sweep.hpp"

namespace bhclone {

enum class CheckStatus { pass, fail, tail_limited };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::tail_limited: return "TAIL-LIMITED";
  }
  return "?";
}

struct CheckResult {
  int criterion = 0;
  std::string name;
  CheckStatus status = CheckStatus::pass;
  double worst = 0.0;  // largest observed deviation (or violation)
  double limit = 0.0;
  std::string detail;
};

struct ValidationOptions {
  bool quick = false;       // omega/T = 4 only, M <= 4 (M <= 3 for oracle runs), n_max <= 10
  double tol = 1e-8;        // truncation tolerance of the oracle runs
  bool flip_beamsplitter_sign = false;  // mutation: builds the late Hamiltonian with -g'
};

namespace detail {

struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, std::string at) {
    if (!(v <= value)) {  // NaN counts as worst
      value = v;
      where = std::move(at);
    }
  }
};

inline std::string point(double gamma0, double x, int n, int m) {
  return "gamma0=" + format_number(gamma0) + " omega/T=" + format_number(x) + " N=" + std::to_string(n) +
         " M=" + std::to_string(m);
}

inline CheckResult finish(int criterion, std::string name, const Worst& w, double limit) {
  CheckResult r{criterion, std::move(name), CheckStatus::pass, w.value, limit, w.where};
  if (!(w.value <= limit)) r.status = CheckStatus::fail;
  return r;
}

// Oracle checks whose cutoff cannot reach the requested tolerance are tail-limited, not failed.
inline CheckResult guarded(int criterion, std::string name, double limit, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const TruncationError& e) {
    return {criterion, std::move(name), CheckStatus::tail_limited, 0.0, limit, e.what()};
  } catch (const ResourceError& e) {
    return {criterion, std::move(name), CheckStatus::tail_limited, 0.0, limit, e.what()};
  } catch (const std::exception& e) {
    return {criterion, std::move(name), CheckStatus::fail, 0.0, limit, e.what()};
  }
}

inline std::vector<double> oracle_omegas(const ValidationOptions& o) {
  return o.quick ? std::vector<double>{4.0} : std::vector<double>{2.0, 4.0};
}

inline SimulationOptions oracle_options(const ValidationOptions& o) {
  SimulationOptions s;
  s.tol = o.tol;
  if (o.quick) s.ceiling = 10;
  return s;
}

inline CheckResult check_closed_form(const ValidationOptions& o) {
  Worst w;
  const int m_top = o.quick ? 4 : 100;
  for (double g : {0.1, 0.3, 0.5, 0.9, 0.95, 0.99, 1.0})
    for (double x : {1.0, 2.0, 4.0, 10.0, 20.0}) {
      const BlackHoleParams p = late_time_coeffs(g, x);
      for (int m = 1; m <= m_top; ++m) w.update(late_time_fidelity_1M(p, m).diagnostics.closed_form_residual, point(g, x, 1, m));
    }
  return finish(1, "closed_form_vs_postselection_sum", w, 1e-12);
}

inline CheckResult check_optimality_identities(const ValidationOptions& o) {
  const int top = o.quick ? 4 : 12;
  std::string bad;
  int failures = 0;
  for (int n = 1; n <= top; ++n)
    for (int m = n; m <= top; ++m) {
      if (early_time_clone_fidelity_exact(n, m) != optimal_fidelity_exact(n, m)) ++failures, bad = "clone N=" + std::to_string(n) + " M=" + std::to_string(m);
      if (m > n && early_time_anticlone_fidelity_exact(n, m) != Rational(n + 1, n + 2)) ++failures, bad = "anticlone N=" + std::to_string(n);
    }
  for (int n = 1; n <= std::min(top, 8); ++n)
    for (int m = 1; m <= top; ++m)
      if (antiparticle_input_clone_fidelity_exact(n, m) != Rational(n + 1, n + 2)) ++failures, bad = "antiparticle input N=" + std::to_string(n) + " M=" + std::to_string(m);
  return {2, "exact_rational_identities", failures ? CheckStatus::fail : CheckStatus::pass, static_cast<double>(failures), 0.0,
          failures ? bad : "all identities exact"};
}

inline CheckResult check_distributions(const ValidationOptions& o) {
  return guarded(3, "oracle_region1_distributions", 1e-6, [&] {
    Worst w;
    SimulationOptions s = oracle_options(o);
    for (double g : {0.3, 0.95, 1.0})
      for (double x : oracle_omegas(o)) {
        const BlackHoleParams p = late_time_coeffs(g, x);
        const RegionDistributions sim = simulate_region1_distributions(p, LogicalQubit::particle(), 1, s);
        const int top = static_cast<int>(sim.particle.size()) - 1;
        // Excess over the allowed tail mass.
        w.update(total_variation(sim.particle, late_time_particle_distribution(p, top)) - sim.particle.tail_mass,
                 point(g, x, 1, 0) + " particle");
        w.update(total_variation(sim.antiparticle, late_time_antiparticle_distribution(p, top)) - sim.antiparticle.tail_mass,
                 point(g, x, 1, 0) + " antiparticle");
      }
    return finish(3, "oracle_region1_distributions", w, 1e-6);
  });
}

inline CheckResult check_late_oracle_fidelity(const ValidationOptions& o) {
  return guarded(4, "oracle_late_fidelity", 1e-6, [&] {
    Worst w;
    const std::vector<int> ms = o.quick ? one_to(3) : one_to(6);  // quick: cutoff stays within 10
    for (double g : {0.3, 0.95, 1.0})
      for (double x : oracle_omegas(o)) {
        const BlackHoleParams p = late_time_coeffs(g, x);
        for (const CloneReport& r : n_to_m_fidelity_curve(Scenario::late, p, LogicalQubit::particle(), 1, ms, oracle_options(o)))
          w.update(std::abs(r.fidelity - late_time_fidelity_1M(p, r.m).fidelity), point(g, x, 1, r.m));
      }
    return finish(4, "oracle_late_fidelity", w, 1e-6);
  });
}

inline CheckResult check_early_oracle_fidelity(const ValidationOptions& o) {
  return guarded(4, "oracle_early_fidelity", 1e-6, [&] {
    Worst w;
    // Quick mode keeps every cutoff within 10 at omega/T = 4.
    for (double x : oracle_omegas(o))
      for (int n = 1; n <= (o.quick ? 2 : 3); ++n) {
        const int m_top = !o.quick ? 6 : n == 1 ? 3 : 2;
        std::vector<int> ms;
        for (int m = n; m <= m_top; ++m) ms.push_back(m);
        const EarlyTimeParams p = early_time_coeffs(x);
        for (const CloneReport& r : n_to_m_fidelity_curve(Scenario::early_particle, p, LogicalQubit::particle(), n, ms, oracle_options(o))) {
          w.update(std::abs(r.fidelity - optimal_fidelity(n, r.m)), "omega/T=" + format_number(x) + " N=" + std::to_string(n) + " M=" + std::to_string(r.m));
          if (r.anticlone_fidelity) w.update(std::abs(*r.anticlone_fidelity - anticlone_fidelity(n)), "anticlone N=" + std::to_string(n) + " M=" + std::to_string(r.m));
        }
      }
    return finish(4, "oracle_early_fidelity", w, 1e-6);
  });
}

inline std::vector<CheckResult> check_limits(const ValidationOptions& o) {
  const int m_top = o.quick ? 4 : 100;
  const int m_mid = o.quick ? 4 : 10;
  Worst a, b, c;
  for (double x : {1.0, 2.0, 4.0, 10.0, 20.0}) {
    const BlackHoleParams p = late_time_coeffs(1.0, x);
    a.update(std::abs(p.xi() - 1.0), "xi at omega/T=" + format_number(x));
    for (int m = 1; m <= m_top; ++m) a.update(std::abs(late_time_fidelity_1M(p, m).fidelity - 2.0 / 3.0), point(1.0, x, 1, m));
  }
  for (int m = 1; m <= m_mid; ++m) {
    b.update(std::abs(late_time_fidelity_1M(late_time_coeffs(1e-6, 4.0), m).fidelity - optimal_fidelity(1, m)), point(1e-6, 4.0, 1, m));
    c.update(std::abs(late_time_fidelity_1M(late_time_coeffs(0.95, 10.0), m).fidelity - optimal_fidelity(1, m)), point(0.95, 10.0, 1, m));
  }
  return {finish(5, "full_absorption_is_classical", a, 1e-12), finish(5, "perfect_reflection_is_optimal", b, 1e-5),
          finish(5, "cold_channel_nearly_optimal", c, 0.005)};
}

inline std::vector<CheckResult> check_universality(const ValidationOptions& o) {
  std::vector<CheckResult> out;
  out.push_back(guarded(6, "universality_early", 1e-6, [&] {
    Worst w;
    w.update(universality_check(Scenario::early_particle, early_time_coeffs(4.0), 1, 2, oracle_options(o)), "omega/T=4 N=1 M=2");
    return finish(6, "universality_early", w, 1e-6);
  }));
  out.push_back(guarded(6, "universality_late", 1e-6, [&] {
    Worst w;
    for (int m = 1; m <= 3; ++m)
      w.update(universality_check(Scenario::late, late_time_coeffs(0.95, 4.0), 1, m, oracle_options(o)), point(0.95, 4.0, 1, m));
    return finish(6, "universality_late", w, 1e-6);
  }));
  return out;
}

inline CheckResult check_full_absorption_n_to_m(const ValidationOptions& o) {
  return guarded(7, "full_absorption_n_to_m", 1e-5, [&] {
    Worst w;
    const int n_top = o.quick ? 2 : 3;
    const std::vector<int> ms = o.quick ? one_to(2) : one_to(5);
    for (double x : oracle_omegas(o))
      for (int n = 1; n <= n_top; ++n)
        for (const CloneReport& r : n_to_m_fidelity_curve(Scenario::late, late_time_coeffs(1.0, x), LogicalQubit::particle(), n, ms, oracle_options(o)))
          w.update(std::abs(r.fidelity - classical_limit_fidelity(n)), point(1.0, x, n, r.m));
    return finish(7, "full_absorption_n_to_m", w, 1e-5);
  });
}

// Largest violation of: non-increasing in M per group, pointwise dominance of the
// group order, and the [2/3, 2/3 + 1/(3M)] bracket.
inline Worst figure_violation(const std::vector<ResultRow>& rows, std::size_t groups, std::size_t per_group, bool earlier_dominates) {
  Worst w;
  auto f = [&](std::size_t g, std::size_t i) { return *rows[g * per_group + i].fidelity_analytic; };
  for (std::size_t g = 0; g < groups; ++g)
    for (std::size_t i = 0; i < per_group; ++i) {
      const ResultRow& r = rows[g * per_group + i];
      const std::string at = point(r.gamma0.value_or(0.0), r.omega_over_t, r.n, r.m);
      w.update(std::max(2.0 / 3.0 - f(g, i), f(g, i) - (2.0 / 3.0 + 1.0 / (3.0 * r.m))), at + " bracket");
      if (i > 0) w.update(f(g, i) - f(g, i - 1), at + " increase in M");
      if (g > 0) {
        const double d = earlier_dominates ? f(g, i) - f(g - 1, i) : f(g - 1, i) - f(g, i);
        w.update(d, at + " ordering");
      }
    }
  return w;
}

inline std::vector<CheckResult> check_figures(const ValidationOptions& o) {
  SweepConfig f2 = figure2_preset(), f3 = figure3_preset();
  if (o.quick) f2.m_values = f3.m_values = one_to(4);
  const Worst w2 = figure_violation(run_sweep(f2), f2.gamma0_values.size(), f2.m_values.size(), true);
  const Worst w3 = figure_violation(run_sweep(f3), f3.omega_over_t_values.size(), f3.m_values.size(), false);
  return {finish(8, "figure2_shape", w2, 1e-12), finish(8, "figure3_shape", w3, 1e-12)};
}

inline std::vector<CheckResult> check_structure(const ValidationOptions& o) {
  std::mt19937 rng(20260101);
  std::normal_distribution<double> gauss;
  auto random_state = [&](const FockSpace& s, int max_occ) {
    FockVector v(s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto occ = s.occupations(i);
      if (*std::max_element(occ.begin(), occ.end()) <= max_occ) v.amplitudes[static_cast<Eigen::Index>(i)] = {gauss(rng), gauss(rng)};
    }
    v.amplitudes /= v.norm();
    return v;
  };
  Worst unitarity, charge, hermiticity, monolithic, heisenberg;
  const int n_max = o.quick ? 6 : 10;
  for (double g : {0.3, 0.95, 1.0})
    for (double x : {2.0, 4.0}) {
      const BlackHoleParams p = late_time_coeffs(g, x);
      CouplingConstants c = couplings_from_params(p);
      const ModeCoefficients coeffs = heisenberg_coefficients(c);
      if (o.flip_beamsplitter_sign) c.g_prime = -c.g_prime;
      for (Sector sec : {Sector::k, Sector::minus_k}) {
        const FockSpace s = FockSpace::sector(sec, n_max);
        const FockOperator h = build_late_hamiltonian(sec, c, s);
        hermiticity.update(hermiticity_error(h), point(g, x, 0, 0));
        const FockVector psi = random_state(s, n_max);
        const FockVector out = evolve(h, psi);
        unitarity.update(std::abs(out.norm() - 1.0), point(g, x, 0, 0));
        charge.update(std::abs(sector_charge(out, sec) - sector_charge(psi, sec)), point(g, x, 0, 0));
        // Low occupations keep the truncation out of the Heisenberg comparison.
        const FockSpace wide = FockSpace::sector(sec, 14);
        heisenberg.update(heisenberg_check(build_late_hamiltonian(sec, c, wide), random_state(wide, 1), sec, coeffs).residual,
                          point(g, x, 0, 0));
      }
      const FockSpace sk = FockSpace::sector(Sector::k, 2), smk = FockSpace::sector(Sector::minus_k, 2);
      const LogicalQubit q{0.6, std::complex<double>(0.0, 0.8)};
      const FockVector factorised =
          assemble(evolve(build_late_hamiltonian(Sector::k, c, sk), build_late_hamiltonian(Sector::minus_k, c, smk),
                          sector_product_state(Carrier::c, q, 1, sk, smk)));
      const FockSpace& full = factorised.space;
      FockVector input = FockVector::vacuum(full);
      input.amplitudes = q.sigma * create(input, Mode::c_k).amplitudes + q.tau * create(input, Mode::c_minus_k).amplitudes;
      const FockOperator h_full = build_late_hamiltonian(Sector::k, c, full) + build_late_hamiltonian(Sector::minus_k, c, full);
      monolithic.update((evolve(h_full, input).amplitudes - factorised.amplitudes).norm(), point(g, x, 1, 0));
    }
  for (double x : {1.0, 4.0}) {
    const FockSpace s = FockSpace::sector(Sector::k, n_max, false);
    hermiticity.update(hermiticity_error(build_early_hamiltonian(Sector::k, early_time_coeffs(x).g_k, s)), "early omega/T=" + format_number(x));
  }
  return {finish(9, "unitarity", unitarity, 1e-10), finish(9, "sector_charge_conservation", charge, 1e-10),
          finish(9, "hamiltonian_hermiticity", hermiticity, 1e-14),
          finish(9, "factorised_vs_monolithic", monolithic, 1e-10), finish(9, "heisenberg_convention", heisenberg, 1e-8)};
}

}  // namespace detail

/// Runs every check; `progress` (if set) sees each result as it completes.
inline std::vector<CheckResult> run_validation(const ValidationOptions& o,
                                               const std::function<void(const CheckResult&)>& progress = {}) {
  std::vector<CheckResult> out;
  auto add = [&](CheckResult r) {
    if (progress) progress(r);
    out.push_back(std::move(r));
  };
  auto add_all = [&](std::vector<CheckResult> rs) {
    for (auto& r : rs) add(std::move(r));
  };
  add(detail::check_closed_form(o));
  add(detail::check_optimality_identities(o));
  add(detail::check_distributions(o));
  add(detail::check_late_oracle_fidelity(o));
  add(detail::check_early_oracle_fidelity(o));
  add_all(detail::check_limits(o));
  add_all(detail::check_universality(o));
  add(detail::check_full_absorption_n_to_m(o));
  add_all(detail::check_figures(o));
  add_all(detail::check_structure(o));
  return out;
}

inline bool validation_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == CheckStatus::fail; });
}

}  // namespace bhclone
