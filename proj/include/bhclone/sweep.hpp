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

// Parameter-grid sweeps with deterministic, fixed-format output.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "bhclone/analytic.hpp"
#include "bhclone/bogoliubov.hpp"
#include "bhclone/cloning.hpp"
#include "bhclone/errors.hpp"
#include "json.hpp"

namespace bhclone {

enum class SweepMethod { analytic, simulate, both };
enum class OutputFormat { csv, json };

inline std::string_view to_string(SweepMethod m) {
  switch (m) {
    case SweepMethod::analytic: return "analytic";
    case SweepMethod::simulate: return "simulated";
    case SweepMethod::both: return "both";
  }
  return "?";
}

inline SweepMethod parse_sweep_method(std::string_view s) {
  if (s == "analytic") return SweepMethod::analytic;
  if (s == "simulate" || s == "simulated") return SweepMethod::simulate;
  if (s == "both") return SweepMethod::both;
  throw DomainError("unknown method '" + std::string(s) + "' (expected analytic, simulate or both)");
}

/// "early" is the particle-input early-time channel.
inline Scenario parse_scenario(std::string_view s) {
  if (s == "late") return Scenario::late;
  if (s == "early" || s == "early-particle") return Scenario::early_particle;
  if (s == "early-antiparticle") return Scenario::early_antiparticle;
  throw DomainError("unknown scenario '" + std::string(s) + "' (expected early, early-antiparticle or late)");
}

inline OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw DomainError("unknown format '" + std::string(s) + "' (expected csv or json)");
}

struct SweepConfig {
  std::vector<double> gamma0_values{1.0};  // ignored by the early-time scenarios
  std::vector<double> omega_over_t_values{4.0};
  std::vector<int> n_values{1};
  std::vector<int> m_values{1};
  Scenario scenario = Scenario::late;
  SweepMethod method = SweepMethod::analytic;
  double tol = 1e-8;
  int nmax_ceiling = default_nmax_ceiling;
  std::optional<int> n_max;
  unsigned threads = 0;  // 0: hardware concurrency
  bool timing = false;   // wall_ms stays 0 otherwise, keeping output reproducible
  OutputFormat format = OutputFormat::csv;
  std::string out;  // empty: standard output

  bool early() const { return scenario != Scenario::late; }

  void validate() const {
    if (omega_over_t_values.empty() || n_values.empty() || m_values.empty() || (!early() && gamma0_values.empty())) {
      throw DomainError("sweep grid is empty");
    }
    if (!early())
      for (double g : gamma0_values)
        if (!(g >= 0.0 && g <= 1.0)) throw DomainError("gamma0 values must lie in [0, 1]");
    for (double x : omega_over_t_values)
      if (!(x > 0.0) || !std::isfinite(x)) throw NonPositiveFrequencyRatio("omega/T values must be finite and > 0");
    for (int n : n_values)
      if (n < 1) throw DomainError("N values must be >= 1");
    for (int m : m_values)
      if (m < 1) throw DomainError("M values must be >= 1");
    if (scenario == Scenario::early_particle) {
      for (int n : n_values)
        for (int m : m_values)
          if (m < n) throw DomainError("the early-time particle channel needs M >= N");
    }
    if (!(tol > 0.0)) throw DomainError("tolerance must be > 0");
    if (nmax_ceiling < 1) throw DomainError("n_max ceiling must be >= 1");
    if (n_max && (*n_max < 1 || *n_max > nmax_ceiling)) throw DomainError("n_max must lie in 1..ceiling");
    if (method == SweepMethod::analytic && scenario == Scenario::late) {
      for (int n : n_values)
        for (double g : gamma0_values)
          if (n > 1 && g != 1.0) {
            throw DomainError("no closed form for late-time N > 1 below full absorption; use --method simulate");
          }
    }
    if (method == SweepMethod::simulate && scenario == Scenario::late) {
      for (double g : gamma0_values)
        if (g == 0.0) throw DomainError("gamma0 = 0 has no Hamiltonian; use --method analytic");
    }
  }
};

struct ResultRow {
  std::optional<double> gamma0;  // empty for early-time rows
  double omega_over_t = 0.0;
  int n = 1;
  int m = 1;
  std::optional<double> fidelity_analytic;
  std::optional<double> fidelity_sim;
  std::optional<double> anticlone_fidelity;
  std::optional<double> postselect_prob;
  int n_max = 0;
  double tail_mass = 0.0;
  SweepMethod method = SweepMethod::analytic;
  double wall_ms = 0.0;
};

namespace detail {

struct GridGroup {
  std::optional<double> gamma0;
  double omega_over_t;
  int n;
};

inline std::optional<CloneReport> analytic_report(const SweepConfig& c, const GridGroup& g, int m) {
  switch (c.scenario) {
    case Scenario::early_particle:
      return early_time_clone_fidelity(g.n, m, early_time_coeffs(g.omega_over_t));
    case Scenario::early_antiparticle: {
      CloneReport r;
      r.n = g.n;
      r.m = m;
      r.fidelity = antiparticle_input_clone_fidelity(g.n, m);
      r.postselect_probability = std::numeric_limits<double>::quiet_NaN();
      return r;
    }
    case Scenario::late: {
      const BlackHoleParams p = late_time_coeffs(*g.gamma0, g.omega_over_t);
      if (g.n == 1) return late_time_fidelity_1M(p, m);
      if (p.gamma0 == 1.0) {
        CloneReport r;
        r.n = g.n;
        r.m = m;
        r.fidelity = classical_limit_fidelity(g.n);
        r.postselect_probability = std::numeric_limits<double>::quiet_NaN();
        return r;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

inline ChannelParams channel_params(const SweepConfig& c, const GridGroup& g) {
  if (c.early()) return early_time_coeffs(g.omega_over_t);
  return late_time_coeffs(*g.gamma0, g.omega_over_t);
}

inline std::vector<std::optional<CloneReport>> simulated_reports(const SweepConfig& c, const GridGroup& g) {
  std::vector<std::optional<CloneReport>> out(c.m_values.size());
  if (!c.early() && *g.gamma0 == 0.0) return out;
  SimulationOptions o;
  o.tol = c.tol;
  o.ceiling = c.nmax_ceiling;
  o.n_max = c.n_max;
  const ChannelParams params = channel_params(c, g);
  try {
    const auto reports = n_to_m_fidelity_curve(c.scenario, params, LogicalQubit::particle(), g.n, c.m_values, o);
    for (std::size_t i = 0; i < reports.size(); ++i) out[i] = reports[i];
  } catch (const EmptyPostselection&) {
    // Some M has no weight; settle each M on its own.
    for (std::size_t i = 0; i < c.m_values.size(); ++i) {
      try {
        out[i] = simulate_clone_fidelity(c.scenario, params, LogicalQubit::particle(), g.n, c.m_values[i], o);
      } catch (const EmptyPostselection&) {
      }
    }
  }
  return out;
}

inline std::vector<ResultRow> evaluate_group(const SweepConfig& c, const GridGroup& g) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::optional<CloneReport>> sim(c.m_values.size());
  if (c.method != SweepMethod::analytic) sim = simulated_reports(c, g);
  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < c.m_values.size(); ++i) {
    const int m = c.m_values[i];
    ResultRow row;
    row.gamma0 = g.gamma0;
    row.omega_over_t = g.omega_over_t;
    row.n = g.n;
    row.m = m;
    row.method = c.method;
    bool empty = false;
    if (c.method != SweepMethod::simulate) {
      try {
        if (const auto a = analytic_report(c, g, m)) {
          row.fidelity_analytic = a->fidelity;
          row.anticlone_fidelity = a->anticlone_fidelity;
          if (!std::isnan(a->postselect_probability)) row.postselect_prob = a->postselect_probability;
        }
      } catch (const EmptyPostselection&) {
        empty = true;
      }
    }
    if (const auto& s = sim[i]) {
      row.fidelity_sim = s->fidelity;
      if (!row.anticlone_fidelity) row.anticlone_fidelity = s->anticlone_fidelity;
      if (!row.postselect_prob) row.postselect_prob = s->postselect_probability;
      row.n_max = s->diagnostics.n_max;
      row.tail_mass = s->diagnostics.tail_mass;
    } else if (c.method != SweepMethod::analytic) {
      empty = empty || c.early() || *g.gamma0 > 0.0;
    }
    if (empty && !row.fidelity_analytic && !row.fidelity_sim) row.postselect_prob = 0.0;
    rows.push_back(row);
  }
  if (c.timing) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    for (ResultRow& r : rows) r.wall_ms = ms / static_cast<double>(rows.size());
  }
  return rows;
}

}  // namespace detail

/// Runs fn(i) for i in [0, count) on up to `threads` workers. The first failure (by
/// index) is rethrown after all workers stop.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// One row per grid point, ordered by (gamma0, omega/T, N, M) as listed in the config.
inline std::vector<ResultRow> run_sweep(const SweepConfig& c) {
  c.validate();
  std::vector<detail::GridGroup> groups;
  const std::vector<std::optional<double>> gammas =
      c.early() ? std::vector<std::optional<double>>{std::nullopt}
                : std::vector<std::optional<double>>(c.gamma0_values.begin(), c.gamma0_values.end());
  for (const auto& g : gammas)
    for (double x : c.omega_over_t_values)
      for (int n : c.n_values) groups.push_back({g, x, n});
  std::vector<std::vector<ResultRow>> results(groups.size());
  parallel_for(groups.size(), c.threads, [&](std::size_t i) { results[i] = detail::evaluate_group(c, groups[i]); });
  std::vector<ResultRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  return rows;
}

inline constexpr std::string_view csv_header =
    "gamma0,omega_over_t,N,M,F_analytic,F_sim,F_anticlone,p_postselect,n_max,tail_mass,method,wall_ms";

/// Nine significant digits, printf %g style.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline std::string format_optional(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << csv_header << '\n';
  for (const ResultRow& r : rows) {
    os << format_optional(r.gamma0) << ',' << format_number(r.omega_over_t) << ',' << r.n << ',' << r.m << ','
       << format_optional(r.fidelity_analytic) << ',' << format_optional(r.fidelity_sim) << ','
       << format_optional(r.anticlone_fidelity) << ',' << format_optional(r.postselect_prob) << ',' << r.n_max << ','
       << format_number(r.tail_mass) << ',' << to_string(r.method) << ',' << format_number(r.wall_ms) << '\n';
  }
}

inline nlohmann::ordered_json rows_to_json(const std::vector<ResultRow>& rows) {
  // Values go through the same 9-digit rounding as the CSV.
  auto num = [](const std::optional<double>& x) -> nlohmann::ordered_json {
    if (!x) return nullptr;
    return std::stod(format_number(*x));
  };
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const ResultRow& r : rows) {
    out.push_back({{"gamma0", num(r.gamma0)},
                   {"omega_over_t", num(r.omega_over_t)},
                   {"N", r.n},
                   {"M", r.m},
                   {"F_analytic", num(r.fidelity_analytic)},
                   {"F_sim", num(r.fidelity_sim)},
                   {"F_anticlone", num(r.anticlone_fidelity)},
                   {"p_postselect", num(r.postselect_prob)},
                   {"n_max", r.n_max},
                   {"tail_mass", num(r.tail_mass)},
                   {"method", to_string(r.method)},
                   {"wall_ms", num(r.wall_ms)}});
  }
  return out;
}

inline void write_rows(std::ostream& os, const std::vector<ResultRow>& rows, OutputFormat f) {
  if (f == OutputFormat::csv) {
    write_csv(os, rows);
  } else {
    os << rows_to_json(rows).dump(2) << '\n';
  }
}

/// Writes to `path`; a partially written file is removed if anything fails.
inline void write_rows_to_file(const std::string& path, const std::vector<ResultRow>& rows, OutputFormat f) {
  try {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    write_rows(os, rows, f);
    os.close();
    if (!os) throw Error("failed writing " + path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw;
  }
}

// ---- config files ----

namespace detail {

inline std::vector<double> json_doubles(const nlohmann::json& v, std::string_view key) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw DomainError(std::string(key) + " must be a number or a list of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw DomainError(std::string(key) + " must contain only numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

// Accepts 3, [1, 2, 5] or {"from": 1, "to": 20}.
inline std::vector<int> json_ints(const nlohmann::json& v, std::string_view key) {
  auto as_int = [&](const nlohmann::json& x) {
    if (!x.is_number_integer()) throw DomainError(std::string(key) + " must contain only integers");
    return x.get<int>();
  };
  if (v.is_number()) return {as_int(v)};
  if (v.is_array()) {
    std::vector<int> out;
    for (const auto& x : v) out.push_back(as_int(x));
    return out;
  }
  if (v.is_object()) {
    for (const auto& [k, _] : v.items())
      if (k != "from" && k != "to") throw DomainError("unknown key '" + k + "' in range " + std::string(key));
    if (!v.contains("from") || !v.contains("to")) throw DomainError(std::string(key) + " range needs from and to");
    const int lo = as_int(v["from"]), hi = as_int(v["to"]);
    if (hi < lo) throw DomainError(std::string(key) + " range is empty");
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  throw DomainError(std::string(key) + " must be an integer, a list or a {from, to} range");
}

inline std::string json_string(const nlohmann::json& v, std::string_view key) {
  if (!v.is_string()) throw DomainError(std::string(key) + " must be a string");
  return v.get<std::string>();
}

}  // namespace detail

/// Parses a sweep config object. Unknown keys are rejected.
inline SweepConfig parse_sweep_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("config must be a JSON object");
  SweepConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "gamma0") c.gamma0_values = detail::json_doubles(v, key);
    else if (key == "omega_over_t") c.omega_over_t_values = detail::json_doubles(v, key);
    else if (key == "n") c.n_values = detail::json_ints(v, key);
    else if (key == "m") c.m_values = detail::json_ints(v, key);
    else if (key == "scenario") c.scenario = parse_scenario(detail::json_string(v, key));
    else if (key == "method") c.method = parse_sweep_method(detail::json_string(v, key));
    else if (key == "format") c.format = parse_format(detail::json_string(v, key));
    else if (key == "out") c.out = detail::json_string(v, key);
    else if (key == "tol") c.tol = detail::json_doubles(v, key).at(0);
    else if (key == "nmax") c.n_max = detail::json_ints(v, key).at(0);
    else if (key == "nmax_ceiling") c.nmax_ceiling = detail::json_ints(v, key).at(0);
    else if (key == "threads") c.threads = static_cast<unsigned>(std::max(0, detail::json_ints(v, key).at(0)));
    else if (key == "timing") {
      if (!v.is_boolean()) throw DomainError("timing must be true or false");
      c.timing = v.get<bool>();
    } else {
      throw DomainError("unknown config key '" + key + "'");
    }
  }
  return c;
}

// ---- figure presets (representative grids; the legend values are not recoverable) ----

inline std::vector<int> one_to(int m) {
  std::vector<int> v;
  for (int i = 1; i <= m; ++i) v.push_back(i);
  return v;
}

/// Fidelity against M at omega/T = 4 for several absorption probabilities.
inline SweepConfig figure2_preset() {
  SweepConfig c;
  c.gamma0_values = {0.1, 0.5, 0.9, 0.99, 1.0};
  c.omega_over_t_values = {4.0};
  c.m_values = one_to(20);
  return c;
}

/// Fidelity against M at gamma0 = 0.95 for several temperatures.
inline SweepConfig figure3_preset() {
  SweepConfig c;
  c.gamma0_values = {0.95};
  c.omega_over_t_values = {1.0, 2.0, 4.0, 10.0, 20.0};
  c.m_values = one_to(20);
  return c;
}

}  // namespace bhclone
