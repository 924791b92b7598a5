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

// Cloning verdicts from the Fock-space oracle: evolve an N-copy logical input,
// reduce to one side of the horizon, post-select M quanta there, map the
// (particle, antiparticle) counts onto a symmetric M-qubit state and read off one clone.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bhclone/bogoliubov.hpp"
#include "bhclone/clone_report.hpp"
#include "bhclone/errors.hpp"
#include "bhclone/evolution.hpp"
#include "bhclone/hamiltonian.hpp"
#include "bhclone/number_distribution.hpp"
#include "bhclone/sector_state.hpp"
#include "bhclone/truncation.hpp"

namespace bhclone {

/// One-qubit state in the basis index 0 = |0> (antiparticle), 1 = |1> (particle).
struct QubitDensityMatrix {
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();

  std::complex<double> operator()(int i, int j) const { return rho(i, j); }
  double trace() const { return rho.trace().real(); }

  /// <psi|rho|psi>
  double fidelity(const LogicalQubit& psi) const {
    const Eigen::Vector2cd v(psi.tau, psi.sigma);
    return (v.adjoint() * rho * v)(0, 0).real();
  }
};

struct PostselectedState {
  Eigen::MatrixXcd rho;  // over m = particle count, 0..M
  double probability = 0.0;
};

/// Projects a two-mode (particle, antiparticle) density matrix onto n_p + n_ap = M.
/// Throws EmptyPostselection when that outcome has probability below 1e-300 and
/// TruncationError when M does not fit under the cutoff.
inline PostselectedState postselect_M(const Eigen::MatrixXcd& rho, int m) {
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(rho.rows()))));
  if (d * d != rho.rows() || rho.rows() != rho.cols()) throw DomainError("expected a two-mode density matrix");
  if (m < 0) throw DomainError("M must be >= 0");
  if (m >= d) throw TruncationError("M = " + std::to_string(m) + " needs n_max >= M; cutoff is " + std::to_string(d - 1));
  PostselectedState out;
  out.rho.resize(m + 1, m + 1);
  for (Eigen::Index i = 0; i <= m; ++i)
    for (Eigen::Index j = 0; j <= m; ++j) out.rho(i, j) = rho(i * d + (m - i), j * d + (m - j));
  out.probability = out.rho.trace().real();
  if (!(out.probability >= 1e-300)) throw EmptyPostselection(m);
  out.rho /= out.probability;
  return out;
}

/// |m particles, M-m antiparticles> -> Dicke state of M qubits with m excitations,
/// followed by the partial trace down to one qubit.
inline QubitDensityMatrix dicke_single_clone(const Eigen::MatrixXcd& rho_m, int m) {
  if (m < 1) throw DomainError("Dicke reduction needs M >= 1");
  if (rho_m.rows() != m + 1 || rho_m.cols() != m + 1) throw DomainError("density matrix must be (M+1)x(M+1)");
  QubitDensityMatrix q;
  for (int k = 0; k <= m; ++k) {
    q.rho(1, 1) += (static_cast<double>(k) / m) * rho_m(k, k);
    q.rho(0, 0) += (static_cast<double>(m - k) / m) * rho_m(k, k);
  }
  for (int k = 0; k < m; ++k) q.rho(1, 0) += std::sqrt((k + 1.0) * (m - k)) / m * rho_m(k + 1, k);
  q.rho(0, 1) = std::conj(q.rho(1, 0));
  return q;
}

enum class Scenario { early_particle, early_antiparticle, late };

inline std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::early_particle: return "early-particle";
    case Scenario::early_antiparticle: return "early-antiparticle";
    case Scenario::late: return "late";
  }
  return "?";
}

using ChannelParams = std::variant<EarlyTimeParams, BlackHoleParams>;

struct SimulationOptions {
  double tol = 1e-8;
  int ceiling = default_nmax_ceiling;
  std::optional<int> n_max;            // overrides choose_truncation
  bool check_convergence = true;       // re-run at n_max + 4
  std::optional<Precision> precision;  // chosen from the expected amplitude size when empty
};

/// The state a perfect anticlone would be in: the conjugated input with the roles
/// of particle and antiparticle exchanged.
inline LogicalQubit anticlone_target(const LogicalQubit& q) { return {std::conj(q.tau), std::conj(q.sigma)}; }

namespace detail {

inline void require_scenario_params(Scenario s, const ChannelParams& p) {
  const bool late = std::holds_alternative<BlackHoleParams>(p);
  if (late != (s == Scenario::late)) {
    throw DomainError(std::string(to_string(s)) + " needs " + (late ? "early-time" : "late-time") + " parameters");
  }
}

inline double thermal_ratio(const ChannelParams& p) {
  if (const auto* e = std::get_if<EarlyTimeParams>(&p)) return e->thermal_ratio();
  return std::get<BlackHoleParams>(p).thermal_ratio();
}

inline int truncation_for(const ChannelParams& p, int n, int m, const SimulationOptions& o) {
  if (o.n_max) {
    if (*o.n_max < 1) throw DomainError("n_max must be >= 1");
    return *o.n_max;
  }
  if (const auto* e = std::get_if<EarlyTimeParams>(&p)) return choose_truncation(*e, n, m, o.tol, o.ceiling);
  return choose_truncation(std::get<BlackHoleParams>(p), n, m, o.tol, o.ceiling);
}

// Post-selection probabilities scale like q^excess, excess = quanta beyond the input.
// The least likely (m, M - m) splits are smaller still, and with doubles the clone
// fidelity visibly drifts once the outcome probability falls below ~1e-8. Each wider
// type extends that limit by twice its extra digits.
inline Precision precision_for(Scenario s, const ChannelParams& p, int n, int m) {
  const double q = thermal_ratio(p);
  const int excess = s == Scenario::early_antiparticle ? m : std::abs(m - n);
  const double log10_p = excess == 0 || q <= 0.0 ? 0.0 : excess * std::log10(q);
  if (log10_p >= -7.0) return Precision::binary64;
  if (log10_p >= -40.0) return Precision::binary128;
  if (log10_p >= -75.0) return Precision::decimal50;
  if (log10_p >= -175.0) return Precision::decimal100;
  throw NumericalError("post-selection probability near 1e" + std::to_string(static_cast<int>(log10_p)) +
                       " is beyond the supported precision");
}

inline std::string scientific(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

}  // namespace detail

/// Evolved input and its reductions to both sides of the horizon at one cutoff.
class ChannelSimulation {
 public:
  ChannelSimulation(Scenario scenario, const ChannelParams& params, const LogicalQubit& input, int n, int n_max,
                    Precision precision)
      : scenario_(scenario), input_(input), n_(n), n_max_(n_max), precision_(precision) {
    detail::require_scenario_params(scenario, params);
    if (n < 1) throw DomainError("N must be >= 1");
    input.validate();
    const bool late = scenario == Scenario::late;
    const FockSpace sk = FockSpace::sector(Sector::k, n_max, late);
    const FockSpace smk = FockSpace::sector(Sector::minus_k, n_max, late);
    const Carrier carrier = late ? Carrier::c : scenario == Scenario::early_particle ? Carrier::a : Carrier::b;
    FockOperator hk, hmk;
    if (late) {
      const CouplingConstants c = couplings_from_params(std::get<BlackHoleParams>(params));
      hk = build_late_hamiltonian(Sector::k, c, sk);
      hmk = build_late_hamiltonian(Sector::minus_k, c, smk);
    } else {
      const double g = std::get<EarlyTimeParams>(params).g_k;
      hk = build_early_hamiltonian(Sector::k, g, sk);
      hmk = build_early_hamiltonian(Sector::minus_k, g, smk);
    }
    basis_size_ = sk.size();
    const SectorProductState out = evolve(hk, hmk, sector_product_state(carrier, input, n, sk, smk), precision);
    tail_mass_ = boundary_mass(out);
    region1_ = region1_reduced_state(out);
    if (scenario != Scenario::early_antiparticle) region2_ = region2_reduced_state(out);
  }

  /// Region-I clone fidelity and post-selection probability for M clones.
  CloneReport report(int m) const {
    if (m < 1) throw DomainError("M must be >= 1");
    const PostselectedState ps = postselect_M(region1_, m);
    const LogicalQubit target = scenario_ == Scenario::early_antiparticle ? anticlone_target(input_) : input_;
    CloneReport r;
    r.n = n_;
    r.m = m;
    r.method = Method::simulated;
    r.postselect_probability = ps.probability;
    r.fidelity = dicke_single_clone(ps.rho, m).fidelity(target);
    r.anticlone_fidelity = anticlone(m);
    r.diagnostics.n_max = n_max_;
    r.diagnostics.basis_size = basis_size_;
    r.diagnostics.tail_mass = tail_mass_;
    r.diagnostics.precision_digits = precision_digits(precision_);
    return r;
  }

  const Eigen::MatrixXcd& region1() const { return region1_; }
  const Eigen::MatrixXcd& region2() const { return region2_; }
  int n_max() const { return n_max_; }
  double tail_mass() const { return tail_mass_; }

 private:
  // Early particle input leaves exactly M - N anticlones inside; the late-time region II
  // is not post-selected, so its clone fidelity is averaged over every nonzero count.
  std::optional<double> anticlone(int m) const {
    const LogicalQubit target = anticlone_target(input_);
    if (scenario_ == Scenario::early_particle) {
      if (m <= n_) return std::nullopt;
      const PostselectedState ps = postselect_M(region2_, m - n_);
      return dicke_single_clone(ps.rho, m - n_).fidelity(target);
    }
    if (scenario_ == Scenario::late) {
      double weight = 0.0, sum = 0.0;
      for (int k = 1; k <= n_max_; ++k) {
        try {
          const PostselectedState ps = postselect_M(region2_, k);
          weight += ps.probability;
          sum += ps.probability * dicke_single_clone(ps.rho, k).fidelity(target);
        } catch (const EmptyPostselection&) {
        }
      }
      if (weight <= 0.0) return std::nullopt;
      return sum / weight;
    }
    return std::nullopt;
  }

  Scenario scenario_;
  LogicalQubit input_;
  int n_;
  int n_max_;
  Precision precision_;
  std::size_t basis_size_ = 0;
  double tail_mass_ = 0.0;
  Eigen::MatrixXcd region1_, region2_;
};

namespace detail {

inline double report_delta(const CloneReport& a, const CloneReport& b) {
  double d = std::abs(a.fidelity - b.fidelity);
  d = std::max(d, std::abs(a.postselect_probability - b.postselect_probability) / a.postselect_probability);
  if (a.anticlone_fidelity && b.anticlone_fidelity) d = std::max(d, std::abs(*a.anticlone_fidelity - *b.anticlone_fidelity));
  return d;
}

}  // namespace detail

/// Simulated clone fidelities for several M from one evolution. The cutoff is sized
/// for the largest M; with check_convergence every report is recomputed at n_max + 4
/// and a change above tol raises TruncationError.
inline std::vector<CloneReport> n_to_m_fidelity_curve(Scenario scenario, const ChannelParams& params,
                                                      const LogicalQubit& input, int n, const std::vector<int>& ms,
                                                      const SimulationOptions& opts = {}) {
  if (ms.empty()) throw DomainError("M range must be nonempty");
  if (!(opts.tol > 0.0)) throw DomainError("tolerance must be > 0");
  for (int m : ms) {
    if (m < 1) throw DomainError("M must be >= 1");
    if (scenario == Scenario::early_particle && m < n) throw DomainError("early-time particle input needs M >= N");
  }
  detail::require_scenario_params(scenario, params);
  const int m_top = *std::max_element(ms.begin(), ms.end());
  const int n_max = detail::truncation_for(params, n, m_top, opts);
  Precision precision = Precision::binary64;
  if (opts.precision) {
    precision = *opts.precision;
  } else {
    for (int m : ms) precision = std::max(precision, detail::precision_for(scenario, params, n, m));
  }
  const ChannelSimulation sim(scenario, params, input, n, n_max, precision);
  if (sim.tail_mass() > opts.tol && !opts.n_max) {
    throw TruncationError("probability at the cutoff " + detail::scientific(sim.tail_mass()) + " exceeds tolerance");
  }
  std::vector<CloneReport> out;
  for (int m : ms) out.push_back(sim.report(m));
  if (opts.check_convergence) {
    const ChannelSimulation wider(scenario, params, input, n, n_max + 4, precision);
    for (CloneReport& r : out) {
      r.diagnostics.convergence_delta = detail::report_delta(r, wider.report(r.m));
      if (r.diagnostics.convergence_delta > opts.tol) {
        throw TruncationError("result changed by " + detail::scientific(r.diagnostics.convergence_delta) +
                              " when the cutoff was raised from " + std::to_string(n_max));
      }
    }
  }
  return out;
}

inline CloneReport simulate_clone_fidelity(Scenario scenario, const ChannelParams& params, const LogicalQubit& input,
                                           int n, int m, const SimulationOptions& opts = {}) {
  return n_to_m_fidelity_curve(scenario, params, input, n, {m}, opts).front();
}

/// The four probe inputs used to test rotational invariance.
inline std::vector<LogicalQubit> universality_probes() {
  const double h = 1.0 / std::sqrt(2.0);
  return {{1.0, 0.0}, {0.0, 1.0}, {h, h}, {h, std::complex<double>(0.0, h)}};
}

/// Largest spread of the clone (and anticlone, where defined) fidelity across the probe inputs.
inline double universality_check(Scenario scenario, const ChannelParams& params, int n, int m,
                                 const SimulationOptions& opts = {}) {
  std::vector<CloneReport> reports;
  for (const LogicalQubit& q : universality_probes()) reports.push_back(simulate_clone_fidelity(scenario, params, q, n, m, opts));
  double dev = 0.0;
  for (const auto& a : reports)
    for (const auto& b : reports) {
      dev = std::max(dev, std::abs(a.fidelity - b.fidelity));
      if (a.anticlone_fidelity && b.anticlone_fidelity) dev = std::max(dev, std::abs(*a.anticlone_fidelity - *b.anticlone_fidelity));
    }
  return dev;
}

struct RegionDistributions {
  NumberDistribution particle;      // a_k occupation
  NumberDistribution antiparticle;  // a_-k occupation
  int n_max = 0;
};

/// Simulated occupation distributions of the two region-I modes after the late-time
/// channel. tail_mass is the larger of the missing norm and the mass left at the cutoff.
inline RegionDistributions simulate_region1_distributions(const BlackHoleParams& params, const LogicalQubit& input,
                                                          int n = 1, const SimulationOptions& opts = {}) {
  const int n_max = detail::truncation_for(params, n, 0, opts);
  const ChannelSimulation sim(Scenario::late, params, input, n, n_max, opts.precision.value_or(Precision::binary64));
  const Eigen::MatrixXcd& rho = sim.region1();
  const auto d = static_cast<Eigen::Index>(n_max) + 1;
  RegionDistributions out;
  out.n_max = n_max;
  out.particle.probabilities.assign(static_cast<std::size_t>(d), 0.0);
  out.antiparticle.probabilities.assign(static_cast<std::size_t>(d), 0.0);
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y) {
      const double p = rho(x * d + y, x * d + y).real();
      out.particle.probabilities[x] += p;
      out.antiparticle.probabilities[y] += p;
    }
  for (NumberDistribution* dist : {&out.particle, &out.antiparticle}) {
    dist->tail_mass = std::max({0.0, 1.0 - dist->total(), sim.tail_mass()});
  }
  return out;
}

}  // namespace bhclone
