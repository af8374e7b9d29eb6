// Copyright 2026 The advhyp Authors
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

#include "advhyp/experiments.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "advhyp/asymptotics.hpp"
#include "advhyp/error.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace advhyp {
namespace {

namespace fs = std::filesystem;

RunConfig Resolve(ExperimentKind kind, ConfigMap m) { return ResolveRunConfig(kind, m); }

RunConfig NearSweep(std::string n_range = "10:300:10") {
  return Resolve(ExperimentKind::kExponentSweepBayes,
                 {{"q-lo", "0.7"}, {"q-hi", "0.9"}, {"q-star", "0.8"}, {"n-range", n_range}});
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path ScratchDir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("advhyp_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(2.0), "2");
  EXPECT_EQ(FormatDouble(1e-300), "1e-300");
  EXPECT_EQ(FormatDouble(INFINITY), "inf");
  for (double v : {0.052753221552242, 1.0 / 3.0, 2.1205e-8}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

TEST(RunExponentSweepTest, ThirtyRowSweep) {
  const auto config = NearSweep();
  const auto rows = RunExponentSweep(config);
  ASSERT_EQ(rows.size(), 30u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].n, 10 * static_cast<std::int64_t>(i + 1));
    EXPECT_EQ(rows[i].status, "ok");
    EXPECT_NEAR(rows[i].exponent, -std::log(rows[i].eq_error) / rows[i].n, 1e-15);
  }
  const double target = ChernoffExponent(Distribution::Binary(0.5), Distribution::Binary(0.8));
  EXPECT_LT(std::abs(rows.back().exponent - target), std::abs(rows[4].exponent - target));
  const auto csv = SweepCsv(rows, config);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 31);
}

TEST(RunExponentSweepTest, DegenerateGameMatchesClassicalBayes) {
  const auto config = Resolve(ExperimentKind::kExponentSweepBayes,
                              {{"q-lo", "0.8"}, {"q-hi", "0.8"}, {"grid-size", "1"},
                               {"q-star", "0.8"}, {"cost-scale", "0"}, {"n-values", "50,400"}});
  const auto rows = RunExponentSweep(config);
  ASSERT_EQ(rows.size(), 2u);
  const auto p = Distribution::Binary(0.5);
  const auto q = Distribution::Binary(0.8);
  double best = INFINITY;
  for (std::int64_t k = 0; k <= 401; ++k) {
    best = std::min(best, BayesError(ThresholdRule::Deterministic(400, k), q, p, 1.0));
  }
  EXPECT_NEAR(rows[1].eq_error, best, 1e-15);
  const double chernoff = ChernoffExponent(Distribution::Binary(0.5), Distribution::Binary(0.8));
  EXPECT_LT(std::abs(rows[1].exponent - chernoff), std::abs(rows[0].exponent - chernoff));
}

TEST(SweepCsvTest, HeaderAndEmptyRows) {
  const auto config = NearSweep("10:20:10");
  EXPECT_EQ(SweepCsv({}, config),
            "n,eq_error,exponent,attacker_support_min,attacker_support_max,attacker_mode,"
            "defender_k_min,defender_k_max,status,wall_ms\n");
  const auto manifest = nlohmann::json::parse(ManifestJson(config, std::vector<SweepRow>{}));
  EXPECT_EQ(manifest["row_count"], 0);
  EXPECT_TRUE(manifest["rows"].empty());
}

TEST(SweepCsvTest, ByteIdenticalAcrossParallelism) {
  auto config = NearSweep("20:200:20");
  const auto serial = SweepCsv(RunExponentSweep(config), config);
  config.jobs = 4;
  const auto parallel = SweepCsv(RunExponentSweep(config), config);
  EXPECT_EQ(serial, parallel);
  EXPECT_EQ(serial, SweepCsv(RunExponentSweep(config), config));
}

TEST(ManifestJsonTest, ListsEveryDefault) {
  const auto config = NearSweep("10:30:10");
  const auto rows = RunExponentSweep(config);
  const auto j = nlohmann::json::parse(ManifestJson(config, rows));
  EXPECT_EQ(j["version"], kLibraryVersion);
  EXPECT_EQ(j["row_count"], 3);
  ASSERT_EQ(j["rows"].size(), 3u);
  const auto& c = j["config"];
  for (const char* key : {"p1", "q_lo", "q_hi", "grid_size", "gamma", "epsilon", "cost",
                          "cost_scale", "q_star", "n_values", "threshold_window",
                          "exponent_mode", "jobs", "lp_tol", "lp_pivot_tol",
                          "lp_optimality_tol", "lp_max_pivots", "support_threshold"}) {
    EXPECT_TRUE(c.contains(key)) << key;
  }
  EXPECT_EQ(c["gamma"], 1.0);
  EXPECT_EQ(c["grid_size"], 100);
}

TEST(AssignExponentsTest, SlopeMode) {
  std::vector<SweepRow> rows(3);
  for (int i = 0; i < 3; ++i) {
    rows[i].n = 100 * (i + 1);
    rows[i].log_eq_error = -0.05 * rows[i].n - 2.0;
    rows[i].eq_error = std::exp(rows[i].log_eq_error);
  }
  AssignExponents(rows, ExponentMode::kSlope);
  EXPECT_NEAR(rows[0].exponent, 0.07, 1e-12);  // pointwise fallback
  EXPECT_NEAR(rows[1].exponent, 0.05, 1e-12);
  EXPECT_NEAR(rows[2].exponent, 0.05, 1e-12);
  AssignExponents(rows, ExponentMode::kPointwise);
  EXPECT_NEAR(rows[2].exponent, 0.05 + 2.0 / 300, 1e-12);
}

TEST(EmitOutputsTest, AtomicWritesAndFailureCleanup) {
  const auto dir = ScratchDir("emit");
  EmitOutputs({{(dir / "a.csv").string(), "x\n"}, {(dir / "b.json").string(), "{}"}});
  EXPECT_EQ(ReadFile(dir / "a.csv"), "x\n");
  EXPECT_EQ(ReadFile(dir / "b.json"), "{}");
  EXPECT_THROW(EmitOutputs({{(dir / "c.csv").string(), "y"},
                            {(dir / "missing" / "d.json").string(), "z"}}),
               IoError);
  EXPECT_FALSE(fs::exists(dir / "c.csv"));
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 2u);
  fs::remove_all(dir);
}

TEST(RunBestResponseScanTest, ReferenceScans) {
  auto scan = RunBestResponseScan(Resolve(
      ExperimentKind::kBestResponseScan,
      {{"q-lo", "0.7"}, {"q-hi", "0.9"}, {"q-star", "0.8"}, {"n", "200"}}));
  EXPECT_EQ(scan.q_star_threshold, 133);
  EXPECT_TRUE(scan.intersections.empty());
  EXPECT_EQ(scan.defender_curve.size(), 100u);
  EXPECT_EQ(scan.attacker_curve.size(), 20u);
  for (const auto& pt : scan.attacker_curve) {
    if (pt.k == 133) {
      EXPECT_EQ(pt.q, 0.7);
    }
  }

  // The 100-point grid straddles 0.8; the 101-point grid contains it.
  scan = RunBestResponseScan(Resolve(
      ExperimentKind::kBestResponseScan,
      {{"q-lo", "0.7"}, {"q-hi", "0.9"}, {"q-star", "0.8"}, {"n", "250"}}));
  ASSERT_EQ(scan.intersections.size(), 1u);
  EXPECT_EQ(scan.intersections[0].q_index, 49u);
  EXPECT_EQ(scan.intersections[0].k, 166);

  scan = RunBestResponseScan(Resolve(
      ExperimentKind::kBestResponseScan,
      {{"q-lo", "0.7"}, {"q-hi", "0.9"}, {"q-star", "0.8"}, {"n", "250"}, {"grid-size", "101"}}));
  ASSERT_EQ(scan.intersections.size(), 1u);
  EXPECT_NEAR(scan.intersections[0].q, 0.8, 1e-12);
  EXPECT_EQ(scan.intersections[0].k, 166);

  scan = RunBestResponseScan(Resolve(ExperimentKind::kBestResponseScan,
                                     {{"q-lo", "0.7"}, {"q-hi", "0.9"}, {"q-star", "0.8"},
                                      {"cost", "quad"}, {"n", "800"}, {"grid-size", "101"}}));
  ASSERT_EQ(scan.intersections.size(), 1u);
  EXPECT_NEAR(scan.intersections[0].q, 0.8, 1e-12);
  EXPECT_EQ(scan.intersections[0].k, 529);
  const auto csv = BestResponseCsv(scan);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 101 + 20 + 1);
}

TEST(RunNpExperimentTest, AttackerReachesQStar) {
  const auto rows = RunNpExperiment(Resolve(
      ExperimentKind::kExponentSweepNp,
      {{"q-lo", "0.7"}, {"q-hi", "0.8"}, {"q-star", "0.8"}, {"n-values", "5,50,200,800"}}));
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i].attacker_mode, 0.8);
  EXPECT_NEAR(rows.back().exponent, 0.19741, 1e-5);
  for (const auto& r : rows) EXPECT_EQ(r.status, "ok");
}

TEST(RunNpExperimentTest, SmallCostDelaysConvergence) {
  auto first_at_q_star = [](const std::string& cost, const std::string& scale) {
    const auto rows = RunNpExperiment(Resolve(
        ExperimentKind::kExponentSweepNp, {{"q-lo", "0.7"}, {"q-hi", "0.8"}, {"q-star", "0.8"},
                                           {"cost", cost}, {"cost-scale", scale},
                                           {"n-range", "10:400:10"}}));
    for (const auto& r : rows) {
      if (r.attacker_mode == 0.8) return r.n;
    }
    return std::int64_t{-1};
  };
  const auto abs_n = first_at_q_star("abs", "1");
  const auto quad_n = first_at_q_star("quad", "0.001");
  ASSERT_GT(abs_n, 0);
  ASSERT_GT(quad_n, 0);
  EXPECT_GT(quad_n, 2 * abs_n);
}

#ifdef ADVHYP_CLI_PATH
int RunCli(const std::string& args) {
  const std::string cmd = std::string(ADVHYP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliTest, ExitCodes) {
  const auto dir = ScratchDir("cli");
  const std::string base = "--q-lo 0.7 --q-hi 0.9 --q-star 0.8";
  EXPECT_EQ(RunCli("chernoff --q-star 0.8"), 0);
  EXPECT_EQ(RunCli("check " + base), 0);
  EXPECT_EQ(RunCli("sweep-bayes " + base + " --n-values 10,20 --out-csv " +
                   (dir / "s.csv").string() + " --out-json " + (dir / "s.json").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "s.csv"));
  EXPECT_TRUE(fs::exists(dir / "s.json"));
  EXPECT_EQ(RunCli("sweep-bayes " + base + " --n-values 20,10"), 2);
  EXPECT_EQ(RunCli("sweep-bayes --q-lo 0.4 --q-hi 0.9 --q-star 0.8 --n 5"), 2);
  EXPECT_EQ(RunCli("sweep-bayes " + base + " --config " + (dir / "absent.cfg").string()), 2);
  EXPECT_EQ(RunCli("sweep-bayes " + base + " --n 10 --out-csv " +
                   (dir / "no" / "x.csv").string()),
            4);
  fs::remove_all(dir);
}

TEST(CliTest, ConfigFileAndOverride) {
  const auto dir = ScratchDir("cfg");
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "q-lo = 0.7\nq-hi = 0.9\nq-star = 0.8\nn-values = 10,20\n";
  }
  EXPECT_EQ(RunCli("sweep-bayes --config " + (dir / "run.cfg").string() + " --out-csv " +
                   (dir / "a.csv").string()),
            0);
  EXPECT_EQ(RunCli("sweep-bayes --config " + (dir / "run.cfg").string() + " --jobs 3 --out-csv " +
                   (dir / "b.csv").string()),
            0);
  EXPECT_EQ(ReadFile(dir / "a.csv"), ReadFile(dir / "b.csv"));
  EXPECT_EQ(RunCli("sweep-bayes --config " + (dir / "run.cfg").string() +
                   " --n-values 30 --out-csv " + (dir / "c.csv").string()),
            0);
  EXPECT_EQ(ReadFile(dir / "c.csv").rfind("\n30,", std::string::npos) != std::string::npos, true);
  fs::remove_all(dir);
}
#endif

}  // namespace
}  // namespace advhyp
