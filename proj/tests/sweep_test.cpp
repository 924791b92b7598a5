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

#include "bhclone/sweep.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

using namespace bhclone;

namespace {

std::string csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

}  // namespace

TEST(SweepConfig, RejectsEmptyAndInvalidGrids) {
  SweepConfig c;
  c.m_values.clear();
  EXPECT_THROW(run_sweep(c), DomainError);
  c = SweepConfig{};
  c.gamma0_values = {1.5};
  EXPECT_THROW(run_sweep(c), DomainError);
  c = SweepConfig{};
  c.omega_over_t_values = {0.0};
  EXPECT_THROW(run_sweep(c), NonPositiveFrequencyRatio);
  c = SweepConfig{};
  c.scenario = Scenario::early_particle;
  c.n_values = {3};
  c.m_values = {2};
  EXPECT_THROW(run_sweep(c), DomainError);
  c = SweepConfig{};
  c.gamma0_values = {0.5};
  c.n_values = {2};
  EXPECT_THROW(run_sweep(c), DomainError);  // no late-time closed form for N > 1
}

TEST(SweepConfig, ParsesJsonAndRejectsUnknownKeys) {
  const SweepConfig c = parse_sweep_config(
      R"({"gamma0": [0.5, 1.0], "omega_over_t": 4, "n": 1, "m": {"from": 2, "to": 4}, "method": "both", "threads": 2})");
  EXPECT_EQ(c.gamma0_values, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(c.omega_over_t_values, (std::vector<double>{4.0}));
  EXPECT_EQ(c.m_values, (std::vector<int>{2, 3, 4}));
  EXPECT_EQ(c.method, SweepMethod::both);
  EXPECT_EQ(c.threads, 2u);
  EXPECT_THROW(parse_sweep_config(R"({"gamma_0": [0.5]})"), DomainError);
  EXPECT_THROW(parse_sweep_config(R"({"m": {"from": 1, "upto": 3}})"), DomainError);
  EXPECT_THROW(parse_sweep_config("[1, 2]"), DomainError);
  EXPECT_THROW(parse_sweep_config("{"), DomainError);
}

TEST(Sweep, CsvHeaderAndFormat) {
  SweepConfig c;
  c.gamma0_values = {0.95};
  c.omega_over_t_values = {4.0};
  c.m_values = {1};
  const std::string out = csv(run_sweep(c));
  EXPECT_EQ(out, "gamma0,omega_over_t,N,M,F_analytic,F_sim,F_anticlone,p_postselect,n_max,tail_mass,method,wall_ms\n"
                 "0.95,4,1,1,0.835457572,,,0.0937615313,0,0,analytic,0\n");
}

TEST(Sweep, OrderIsLexicographicAndThreadIndependent) {
  SweepConfig c;
  c.gamma0_values = {0.3, 0.95};
  c.omega_over_t_values = {2.0, 4.0};
  c.m_values = {1, 2, 3};
  c.method = SweepMethod::both;
  c.threads = 1;
  const auto serial = run_sweep(c);
  c.threads = 4;
  const auto parallel = run_sweep(c);
  EXPECT_EQ(csv(serial), csv(parallel));
  ASSERT_EQ(serial.size(), 12u);
  EXPECT_EQ(*serial[0].gamma0, 0.3);
  EXPECT_EQ(serial[3].omega_over_t, 4.0);
  EXPECT_EQ(serial[5].m, 3);
  EXPECT_EQ(*serial[6].gamma0, 0.95);
  for (const auto& r : serial) EXPECT_NEAR(*r.fidelity_sim, *r.fidelity_analytic, 1e-6);
}

TEST(Sweep, PerfectReflectorReportsEmptyOutcome) {
  SweepConfig c;
  c.gamma0_values = {0.0};
  c.m_values = {1, 2};
  const auto rows = run_sweep(c);
  EXPECT_NEAR(*rows[0].fidelity_analytic, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(*rows[0].postselect_prob, 1.0);
  EXPECT_FALSE(rows[1].fidelity_analytic);
  EXPECT_EQ(*rows[1].postselect_prob, 0.0);
}

TEST(Sweep, EarlyRowsHaveNoGamma0) {
  SweepConfig c;
  c.scenario = Scenario::early_particle;
  c.n_values = {2};
  c.m_values = {4};
  const auto rows = run_sweep(c);
  EXPECT_FALSE(rows[0].gamma0);
  EXPECT_NEAR(*rows[0].fidelity_analytic, 7.0 / 8.0, 1e-15);
  EXPECT_NEAR(*rows[0].anticlone_fidelity, 0.75, 1e-15);
}

TEST(Sweep, FailedRunRemovesPartialFile) {
  const std::string path = (std::filesystem::temp_directory_path() / "bhclone_sweep_test.csv").string();
  std::filesystem::remove(path);
  SweepConfig c;
  c.gamma0_values = {1.0};
  c.omega_over_t_values = {1.0};
  c.m_values = {1, 2};
  c.method = SweepMethod::simulate;
  c.n_max = 3;  // far too small: the convergence check trips
  EXPECT_THROW(write_rows_to_file(path, run_sweep(c), OutputFormat::csv), TruncationError);
  EXPECT_FALSE(std::filesystem::exists(path));
  EXPECT_THROW(write_rows_to_file("/nonexistent-dir/x.csv", {}, OutputFormat::csv), Error);
}

TEST(Sweep, JsonRoundsLikeCsv) {
  SweepConfig c;
  c.gamma0_values = {0.95};
  const auto j = rows_to_json(run_sweep(c));
  EXPECT_EQ(j.at(0).at("F_analytic").get<double>(), 0.835457572);
  EXPECT_TRUE(j.at(0).at("F_sim").is_null());
  EXPECT_EQ(j.at(0).at("method"), "analytic");
}

TEST(Figures, Figure2ShapeAndOrdering) {
  const SweepConfig c = figure2_preset();
  const auto rows = run_sweep(c);
  const std::size_t per = c.m_values.size();
  ASSERT_EQ(rows.size(), c.gamma0_values.size() * per);
  for (std::size_t g = 0; g < c.gamma0_values.size(); ++g)
    for (std::size_t i = 0; i < per; ++i) {
      const ResultRow& r = rows[g * per + i];
      const double f = *r.fidelity_analytic;
      EXPECT_GE(f, 2.0 / 3.0 - 1e-12);
      EXPECT_LE(f, 2.0 / 3.0 + 1.0 / (3.0 * r.m) + 1e-12);
      if (i > 0) {
        EXPECT_LE(f, *rows[g * per + i - 1].fidelity_analytic + 1e-12);
      }
      if (g > 0) {
        EXPECT_LE(f, *rows[(g - 1) * per + i].fidelity_analytic + 1e-12);  // smaller gamma0 dominates
      }
    }
}

TEST(Figures, Figure3ShapeAndOrdering) {
  const SweepConfig c = figure3_preset();
  const auto rows = run_sweep(c);
  const std::size_t per = c.m_values.size();
  for (std::size_t g = 1; g < c.omega_over_t_values.size(); ++g)
    for (std::size_t i = 0; i < per; ++i) {
      EXPECT_GE(*rows[g * per + i].fidelity_analytic, *rows[(g - 1) * per + i].fidelity_analytic - 1e-12);
      if (i > 0) {
        EXPECT_LE(*rows[g * per + i].fidelity_analytic, *rows[g * per + i - 1].fidelity_analytic + 1e-12);
      }
    }
}

TEST(ParallelFor, RethrowsFirstFailureByIndex) {
  std::vector<int> hit(10, 0);
  EXPECT_NO_THROW(parallel_for(10, 3, [&](std::size_t i) { hit[i] = 1; }));
  EXPECT_EQ(std::accumulate(hit.begin(), hit.end(), 0), 10);
  EXPECT_THROW(parallel_for(5, 2, [](std::size_t i) {
                 if (i == 2) throw TruncationError("boom");
               }),
               TruncationError);
}
