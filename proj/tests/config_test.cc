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

#include "advhyp/config.hpp"

#include <filesystem>
#include <fstream>

#include "advhyp/error.hpp"
#include "gtest/gtest.h"

namespace advhyp {
namespace {

ConfigMap NearSweep() {
  return {{"q-lo", "0.7"}, {"q-hi", "0.9"}, {"q-star", "0.8"}, {"n-range", "10:300:10"}};
}

TEST(NormalizeKeyTest, Spellings) {
  EXPECT_EQ(NormalizeKey("--Grid_Size"), "grid-size");
  EXPECT_EQ(NormalizeKey("q_lo"), "q-lo");
  EXPECT_EQ(NormalizeKey("  epsilon "), "epsilon");
}

TEST(ParseConfigTextTest, CommentsAndWhitespace) {
  const auto m = ParseConfigText("# header\n q_lo = 0.7  # inline\n\nq-hi=0.9\r\ncost = quad\n");
  EXPECT_EQ(m.size(), 3u);
  EXPECT_EQ(m.at("q-lo"), "0.7");
  EXPECT_EQ(m.at("q-hi"), "0.9");
  EXPECT_EQ(m.at("cost"), "quad");
}

TEST(ParseConfigTextTest, Errors) {
  EXPECT_THROW(ParseConfigText("q-lo 0.7\n"), InvalidArgument);
  EXPECT_THROW(ParseConfigText("colour = red\n"), InvalidArgument);
  EXPECT_THROW(ParseConfigText("n = 3\nn = 4\n"), InvalidArgument);
}

TEST(ParseConfigFileTest, ReadsFileAndReportsMissing) {
  const auto path = std::filesystem::temp_directory_path() / "advhyp_config_test.cfg";
  {
    std::ofstream out(path);
    out << "q-lo = 0.6\nq-hi = 0.9\n";
  }
  EXPECT_EQ(ParseConfigFile(path).at("q-lo"), "0.6");
  std::filesystem::remove(path);
  EXPECT_THROW(ParseConfigFile(path), InvalidArgument);
}

TEST(MergeConfigTest, OverridesWin) {
  const auto merged = MergeConfig({{"q-lo", "0.6"}, {"gamma", "2"}}, {{"q_lo", "0.7"}});
  EXPECT_EQ(merged.at("q-lo"), "0.7");
  EXPECT_EQ(merged.at("gamma"), "2");
}

TEST(ParseNValuesTest, RangesAndLists) {
  EXPECT_EQ(ParseNValues("10:50:20"), (std::vector<std::int64_t>{10, 30, 50}));
  EXPECT_EQ(ParseNValues("3, 7,11"), (std::vector<std::int64_t>{3, 7, 11}));
  EXPECT_EQ(ParseNValues("10:300:10").size(), 30u);
  EXPECT_THROW(ParseNValues("1:2"), InvalidArgument);
  EXPECT_THROW(ParseNValues("1:5:0"), InvalidArgument);
  EXPECT_THROW(ParseNValues("4,x"), InvalidArgument);
}

TEST(ResolveRunConfigTest, DefaultsAreFilled) {
  const auto c = ResolveRunConfig(ExperimentKind::kExponentSweepBayes, NearSweep());
  EXPECT_EQ(c.p1, 0.5);
  EXPECT_EQ(c.grid_size, 100);
  EXPECT_EQ(c.gamma, 1.0);
  EXPECT_EQ(c.cost_kind, "abs");
  EXPECT_EQ(c.cost_scale, 1.0);
  EXPECT_EQ(c.n_values.size(), 30u);
  EXPECT_EQ(c.exponent_mode, ExponentMode::kPointwise);
  EXPECT_EQ(c.jobs, 1);
  EXPECT_EQ(c.BayesSpec(40).n, 40);
  EXPECT_EQ(c.Cost().kind(), CostFunction::Kind::kScaledAbsolute);
}

TEST(ResolveRunConfigTest, ValidationErrors) {
  auto m = NearSweep();
  m["n"] = "5";
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
  m = NearSweep();
  m.erase("n-range");
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
  m["n-values"] = "10,5";
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
  m["n-values"] = "10,20";
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kBestResponseScan, m), InvalidArgument);
  m = NearSweep();
  m["q-lo"] = "0.4";  // p inside Q
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
  m = NearSweep();
  m["exponent-mode"] = "median";
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
  m = NearSweep();
  m["jobs"] = "0";
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
  m = NearSweep();
  m["cost"] = "cubic";
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
  m = NearSweep();
  m["gamma"] = "abc";
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
  m = NearSweep();
  m["bogus"] = "1";
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
}

TEST(ResolveRunConfigTest, TabulatedCost) {
  ConfigMap m{{"q-lo", "0.7"}, {"q-hi", "0.9"}, {"grid-size", "3"}, {"cost", "table"},
              {"cost-values", "0.2, 0, 0.1"}, {"n", "20"}};
  const auto c = ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m);
  EXPECT_EQ(c.cost_values, (std::vector<double>{0.2, 0.0, 0.1}));
  m["cost-values"] = "0.2, 0";
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kExponentSweepBayes, m), InvalidArgument);
}

TEST(ResolveRunConfigTest, ExponentKindsNeedNoGame) {
  const auto c = ResolveRunConfig(ExperimentKind::kChernoff, {{"q-star", "0.8"}});
  EXPECT_EQ(c.Q(), Distribution::Binary(0.8));
  const auto d = ResolveRunConfig(ExperimentKind::kStein, {{"p", "0.2,0.3,0.5"}, {"q", "0.5,0.3,0.2"}});
  EXPECT_EQ(d.P().size(), 3u);
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kStein, {{"p", "0.5,0.5"}, {"q", "0.2,0.3,0.5"}}),
               InvalidArgument);
  EXPECT_THROW(ResolveRunConfig(ExperimentKind::kChernoff, {}), InvalidArgument);
}

TEST(ResolveRunConfigTest, CheckWithoutSampleCount) {
  const auto c = ResolveRunConfig(ExperimentKind::kCheck,
                                  {{"q-lo", "0.6"}, {"q-hi", "0.9"}, {"q-star", "0.9"}});
  EXPECT_TRUE(c.n_values.empty());
}

}  // namespace
}  // namespace advhyp
