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

// bhclone: cloning fidelities of the black-hole channel from the command line.
//
// Exit codes: 0 ok, 1 validation failure, 2 usage or domain error,
// 3 numerical or truncation failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bhclone/analytic.hpp"
#include "bhclone/cloning.hpp"
#include "bhclone/errors.hpp"
#include "bhclone/sweep.hpp"
#include "bhclone/validation.hpp"

namespace {

using namespace bhclone;

constexpr int kOk = 0, kValidationFailed = 1, kUsage = 2, kNumerical = 3;

// "3", "1,2,5" or "1..20" (lists may mix both).
std::vector<int> parse_int_list(const std::vector<std::string>& tokens, const std::string& flag) {
  std::vector<int> out;
  for (const std::string& t : tokens) {
    try {
      const auto dots = t.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoi(t));
        continue;
      }
      const int lo = std::stoi(t.substr(0, dots)), hi = std::stoi(t.substr(dots + 2));
      for (int i = lo; i <= hi; ++i) out.push_back(i);
    } catch (const std::logic_error&) {
      throw DomainError("cannot read '" + t + "' for " + flag);
    }
  }
  return out;
}

struct GridFlags {
  std::vector<double> gamma0;
  std::vector<double> omega;
  std::vector<std::string> n{"1"};
  std::vector<std::string> m;
};

struct CommonFlags {
  std::string method;
  std::string scenario = "late";
  double tol = 1e-8;
  std::optional<int> n_max;
  int ceiling = default_nmax_ceiling;
  unsigned threads = 0;
  std::string out;
  std::string format = "csv";
  bool timing = false;
};

void add_common(CLI::App* app, CommonFlags& f, bool with_scenario = true) {
  app->add_option("--method", f.method, "analytic | simulate | both");
  if (with_scenario) app->add_option("--scenario", f.scenario, "early | early-antiparticle | late")->capture_default_str();
  app->add_option("--tol", f.tol, "truncation tolerance of the oracle")->capture_default_str();
  app->add_option("--nmax", f.n_max, "fixed per-mode cutoff (default: chosen from --tol)");
  app->add_option("--nmax-ceiling", f.ceiling, "largest cutoff the oracle may choose")->capture_default_str();
  app->add_option("--threads", f.threads, "worker threads (default: all cores)");
  app->add_option("--out", f.out, "output file (default: standard output)");
  app->add_option("--format", f.format, "csv | json")->capture_default_str();
  app->add_flag("--timing", f.timing, "record wall time per row (output is then not reproducible)");
}

void apply_common(SweepConfig& c, const CommonFlags& f) {
  if (!f.method.empty()) c.method = parse_sweep_method(f.method);
  c.scenario = parse_scenario(f.scenario);
  c.tol = f.tol;
  c.n_max = f.n_max;
  c.nmax_ceiling = f.ceiling;
  c.threads = f.threads;
  c.format = parse_format(f.format);
  c.timing = f.timing;
  if (!f.out.empty()) c.out = f.out;
}

void emit(const SweepConfig& c, const std::vector<ResultRow>& rows) {
  if (c.out.empty()) {
    write_rows(std::cout, rows, c.format);
  } else {
    write_rows_to_file(c.out, rows, c.format);
  }
}

int run_grid(SweepConfig c) {
  const std::vector<ResultRow> rows = run_sweep(c);
  emit(c, rows);
  return kOk;
}

int cmd_fidelity(const GridFlags& g, const CommonFlags& f) {
  SweepConfig c;
  apply_common(c, f);
  if (g.omega.size() != 1 || g.m.empty()) throw DomainError("fidelity needs --omega-over-t and --m");
  if (!c.early() && g.gamma0.size() != 1) throw DomainError("fidelity needs --gamma0 for the late-time channel");
  if (!c.early()) c.gamma0_values = g.gamma0;
  c.omega_over_t_values = g.omega;
  c.n_values = parse_int_list(g.n, "--n");
  c.m_values = parse_int_list(g.m, "--m");
  if (c.n_values.size() != 1 || c.m_values.size() != 1) throw DomainError("fidelity evaluates a single (N, M); use sweep for grids");
  const std::vector<ResultRow> rows = run_sweep(c);
  const ResultRow& r = rows.front();
  std::optional<double> diff;
  if (r.fidelity_analytic && r.fidelity_sim) diff = *r.fidelity_sim - *r.fidelity_analytic;
  if (c.format == OutputFormat::json) {
    auto j = rows_to_json(rows).at(0);
    if (diff) j["F_sim_minus_F_analytic"] = std::stod(format_number(*diff));
    std::ostringstream os;
    os << j.dump(2) << '\n';
    if (c.out.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream file(c.out);
      file << os.str();
      if (!file) throw Error("failed writing " + c.out);
    }
    return kOk;
  }
  emit(c, rows);
  if (diff && c.out.empty()) std::cout << "# F_sim - F_analytic = " << format_number(*diff) << '\n';
  return kOk;
}

int cmd_sweep(const std::string& config_path, const GridFlags& g, const CommonFlags& f, CLI::App* app) {
  SweepConfig c;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw DomainError("cannot read config " + config_path);
    std::stringstream text;
    text << in.rdbuf();
    c = parse_sweep_config(text.str());
  }
  // Flags given on the command line override the config file.
  auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--method")) c.method = parse_sweep_method(f.method);
  if (given("--scenario")) c.scenario = parse_scenario(f.scenario);
  if (given("--tol")) c.tol = f.tol;
  if (given("--nmax")) c.n_max = f.n_max;
  if (given("--nmax-ceiling")) c.nmax_ceiling = f.ceiling;
  if (given("--threads")) c.threads = f.threads;
  if (given("--out")) c.out = f.out;
  if (given("--format")) c.format = parse_format(f.format);
  if (given("--timing")) c.timing = f.timing;
  if (given("--gamma0")) c.gamma0_values = g.gamma0;
  if (given("--omega-over-t")) c.omega_over_t_values = g.omega;
  if (given("--n")) c.n_values = parse_int_list(g.n, "--n");
  if (given("--m")) c.m_values = parse_int_list(g.m, "--m");
  if (config_path.empty() && (!given("--omega-over-t") || !given("--m"))) {
    throw DomainError("sweep needs --config or at least --omega-over-t and --m");
  }
  return run_grid(c);
}

int cmd_figure(SweepConfig preset, const GridFlags& g, const CommonFlags& f, CLI::App* app) {
  CommonFlags flags = f;
  flags.scenario = "late";
  apply_common(preset, flags);
  if (app->count("--m")) preset.m_values = parse_int_list(g.m, "--m");
  return run_grid(preset);
}

int cmd_state(double gamma0, double omega, int m_max, const CommonFlags& f) {
  const BlackHoleParams p = late_time_coeffs(gamma0, omega);
  if (m_max < 0) throw DomainError("--m-max must be >= 0");
  const NumberDistribution particle = late_time_particle_distribution(p, m_max);
  const NumberDistribution anti = late_time_antiparticle_distribution(p, m_max);
  std::optional<RegionDistributions> sim;
  if (gamma0 > 0.0) {
    SimulationOptions o;
    o.tol = f.tol;
    o.ceiling = f.ceiling;
    o.n_max = f.n_max;
    sim = simulate_region1_distributions(p, LogicalQubit::particle(), 1, o);
  }
  std::ostringstream os;
  os << "m,p_analytic(m|1),p_analytic(m|0),p_sim(m|1),p_sim(m|0)\n";
  for (int m = 0; m <= m_max; ++m) {
    auto sim_at = [&](const NumberDistribution& d) {
      return sim && static_cast<std::size_t>(m) < d.size() ? format_number(d[m]) : std::string();
    };
    os << m << ',' << format_number(particle[m]) << ',' << format_number(anti[m]) << ','
       << (sim ? sim_at(sim->particle) : "") << ',' << (sim ? sim_at(sim->antiparticle) : "") << '\n';
  }
  os << "# analytic tail beyond m_max: " << format_number(particle.tail_mass) << " (m|1), "
     << format_number(anti.tail_mass) << " (m|0)\n";
  if (sim) {
    os << "# simulated n_max " << sim->n_max << ", tolerance " << format_number(f.tol) << " + tail "
       << format_number(sim->particle.tail_mass) << "; total variation "
       << format_number(total_variation(sim->particle, late_time_particle_distribution(p, sim->n_max))) << " (m|1), "
       << format_number(total_variation(sim->antiparticle, late_time_antiparticle_distribution(p, sim->n_max))) << " (m|0)\n";
  } else {
    os << "# gamma0 = 0 has no Hamiltonian; simulated columns omitted\n";
  }
  if (f.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream file(f.out);
    file << os.str();
    if (!file) throw Error("failed writing " + f.out);
  }
  return kOk;
}

int cmd_validate(bool quick, double tol, bool flip) {
  ValidationOptions o;
  o.quick = quick;
  o.tol = tol;
  o.flip_beamsplitter_sign = flip;
  const auto results = run_validation(o, [](const CheckResult& r) {
    std::printf("%-12s [%d] %-34s worst %-12s limit %-8s %s\n", std::string(to_string(r.status)).c_str(), r.criterion,
                r.name.c_str(), format_number(r.worst).c_str(), format_number(r.limit).c_str(), r.detail.c_str());
    std::fflush(stdout);
  });
  if (validation_passed(results)) return kOk;
  std::string failed;
  for (const auto& r : results)
    if (r.status == CheckStatus::fail) failed += (failed.empty() ? "" : ", ") + r.name;
  std::cerr << "validation failed: " << failed << '\n';
  return kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-hole channel as a universal quantum cloning machine"};
  app.require_subcommand(1);

  GridFlags grid;
  CommonFlags common;
  auto add_point = [&](CLI::App* sub) {
    sub->add_option("--gamma0", grid.gamma0, "quantum absorption probability(ies) in [0, 1]")->delimiter(',');
    sub->add_option("--omega-over-t", grid.omega, "mode frequency over Hawking temperature")->delimiter(',');
    sub->add_option("--n", grid.n, "input copies: 2, 1,2,3 or 1..3")->delimiter(',');
    sub->add_option("--m", grid.m, "output copies: 5, 1,2,5 or 1..20")->delimiter(',');
  };

  auto* fidelity = app.add_subcommand("fidelity", "clone fidelity at one parameter point");
  add_point(fidelity);
  add_common(fidelity, common);

  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "grid sweep to CSV or JSON");
  sweep->add_option("--config", config_path, "JSON config object (flags override it)");
  add_point(sweep);
  add_common(sweep, common);

  auto* figure2 = app.add_subcommand("figure2", "F against M at omega/T = 4 for several gamma0");
  figure2->add_option("--m", grid.m, "output copies (default 1..20)")->delimiter(',');
  add_common(figure2, common, false);
  auto* figure3 = app.add_subcommand("figure3", "F against M at gamma0 = 0.95 for several omega/T");
  figure3->add_option("--m", grid.m, "output copies (default 1..20)")->delimiter(',');
  add_common(figure3, common, false);

  double gamma0 = 1.0, omega = 1.0;
  int m_max = 10;
  auto* state = app.add_subcommand("state", "region-I particle and antiparticle distributions, analytic and simulated");
  state->add_option("--gamma0", gamma0, "quantum absorption probability")->required();
  state->add_option("--omega-over-t", omega, "mode frequency over Hawking temperature")->required();
  state->add_option("--m-max", m_max, "largest occupation to print")->capture_default_str();
  state->add_option("--tol", common.tol, "truncation tolerance of the oracle")->capture_default_str();
  state->add_option("--nmax", common.n_max, "fixed per-mode cutoff");
  state->add_option("--nmax-ceiling", common.ceiling, "largest cutoff the oracle may choose")->capture_default_str();
  state->add_option("--out", common.out, "output file (default: standard output)");

  bool quick = false, flip = false;
  double validate_tol = 1e-8;
  auto* validate = app.add_subcommand("validate", "run the self-check suite");
  validate->add_flag("--quick", quick, "omega/T = 4 only, small M and cutoffs");
  validate->add_option("--tol", validate_tol, "truncation tolerance of the oracle runs")->capture_default_str();
  validate->add_flag("--inject-sign-flip", flip, "build the late Hamiltonian with -g' (the Heisenberg check must fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fidelity) return cmd_fidelity(grid, common);
    if (*sweep) return cmd_sweep(config_path, grid, common, sweep);
    if (*figure2) return cmd_figure(figure2_preset(), grid, common, figure2);
    if (*figure3) return cmd_figure(figure3_preset(), grid, common, figure3);
    if (*state) return cmd_state(gamma0, omega, m_max, common);
    if (*validate) return cmd_validate(quick, validate_tol, flip);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const EmptyPostselection& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    // TruncationError, ResourceError, NumericalError and I/O failures.
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
