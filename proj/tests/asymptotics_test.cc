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

#include "advhyp/asymptotics.hpp"

#include <cmath>
#include <random>

#include "advhyp/equilibria.hpp"
#include "advhyp/error.hpp"
#include "gtest/gtest.h"

namespace advhyp {
namespace {

const Distribution kUniform = Distribution::Binary(0.5);

TEST(LogMgfLlrTest, Examples) {
  const auto q = Distribution::Binary(0.8);
  EXPECT_NEAR(LogMgfLlr(kUniform, q, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(LogMgfLlr(kUniform, q, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(LogMgfLlr(kUniform, kUniform, 0.37), 0.0, 1e-15);
  EXPECT_NEAR(LogMgfLlr(kUniform, q, 0.5), std::log(std::sqrt(0.1) + std::sqrt(0.4)), 1e-15);
  EXPECT_NEAR(LogMgfLlr(kUniform, q, 0.5), -0.0526803, 1e-7);
}

TEST(LogMgfLlrTest, ConvexOnWideGrid) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  const double h = 1e-3;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = Distribution::Binary(u(rng));
    const auto q = Distribution::Binary(u(rng));
    for (double lambda = -1.0; lambda <= 2.0; lambda += 0.05) {
      const double second = (LogMgfLlr(p, q, lambda + h) - 2 * LogMgfLlr(p, q, lambda) +
                             LogMgfLlr(p, q, lambda - h)) / (h * h);
      EXPECT_GE(second, -1e-6);
    }
  }
}

TEST(ChernoffExponentTest, ReferenceValues) {
  const double c08 = ChernoffExponent(kUniform, Distribution::Binary(0.8));
  EXPECT_NEAR(c08, 0.0527532, 1e-6);
  EXPECT_NEAR(c08, 0.0528, 0.0005);
  const double c09 = ChernoffExponent(kUniform, Distribution::Binary(0.9));
  EXPECT_NEAR(c09, 0.1123774, 1e-6);
  EXPECT_THROW(ChernoffExponent(kUniform, kUniform), InvalidArgument);
}

TEST(ChernoffExponentTest, SymmetricAndVariational) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = u(rng);
    double b = u(rng);
    if (std::abs(a - b) < 1e-3) b = a < 0.5 ? a + 0.1 : a - 0.1;
    const auto p = Distribution::Binary(a);
    const auto q = Distribution::Binary(b);
    const double c = ChernoffExponent(p, q);
    EXPECT_NEAR(c, ChernoffExponent(q, p), 1e-8);
    const auto nu = BalancePoint(p, q);
    EXPECT_NEAR(c, KlDivergence(nu, p), 1e-8);
    EXPECT_NEAR(c, KlDivergence(nu, q), 1e-8);
    EXPECT_GE(SteinExponent(p, q), c);
  }
}

TEST(ChernoffExponentTest, NonBinaryAlphabet) {
  const Distribution p({0.2, 0.3, 0.5});
  const Distribution q({0.5, 0.3, 0.2});
  const double c = ChernoffExponent(p, q);
  // Symmetric pair: the optimum sits at lambda = 1/2.
  EXPECT_NEAR(c, -LogMgfLlr(p, q, 0.5), 1e-10);
}

TEST(BalancePointTest, Examples) {
  EXPECT_NEAR(BalancePoint(kUniform, Distribution::Binary(0.8))[1], 0.660964, 1e-6);
  EXPECT_NEAR(BalancePoint(kUniform, Distribution::Binary(0.9))[1], 0.732487, 1e-6);
  EXPECT_NEAR(BalancePoint(Distribution::Binary(0.7), Distribution::Binary(0.3))[1], 0.5, 1e-12);
  EXPECT_THROW(BalancePoint(kUniform, kUniform), InvalidArgument);
  for (double q1 : {0.05, 0.3, 0.61, 0.97}) {
    const auto q = Distribution::Binary(q1);
    EXPECT_NEAR(BalancePoint(kUniform, q)[1], BalancePointClosedForm(kUniform, q), 1e-11);
  }
}

TEST(SteinExponentTest, ValueAndMonotonicity) {
  EXPECT_NEAR(SteinExponent(kUniform, Distribution::Binary(0.8)), 0.223144, 1e-6);
  EXPECT_EQ(SteinExponent(kUniform, kUniform), 0.0);
  double previous = 0.0;
  for (double q1 = 0.51; q1 < 0.995; q1 += 0.01) {
    const double s = SteinExponent(kUniform, Distribution::Binary(q1));
    EXPECT_GT(s, previous);
    previous = s;
  }
}

TEST(EmpiricalExponentTest, Examples) {
  EXPECT_NEAR(EmpiricalExponent(std::exp(-37.0), 37), 1.0, 1e-14);
  EXPECT_EQ(EmpiricalExponent(1.0, 12), 0.0);
  EXPECT_NEAR(EmpiricalExponent(0.5, 10), 0.069315, 1e-6);
  EXPECT_THROW(EmpiricalExponent(0.0, 10), InvalidArgument);
  EXPECT_THROW(EmpiricalExponent(0.5, 0), InvalidArgument);
  EXPECT_NEAR(SlopeExponent(-10.0, 100, -20.0, 200), 0.1, 1e-15);
}

TEST(CheckAssumptionsTest, Examples) {
  const auto near = CheckAssumptions(0.5, 0.7, 0.9, 100, CostFunction::ScaledAbsolute(1, 0.8));
  EXPECT_TRUE(near.a1_holds);
  EXPECT_TRUE(near.a2_holds);
  EXPECT_TRUE(near.a3_holds);
  EXPECT_TRUE(near.a4_holds);
  EXPECT_NEAR(near.a4_balance_point, 0.660964, 1e-6);
  EXPECT_DOUBLE_EQ(near.q_star, 0.8);

  const auto wide = CheckAssumptions(0.5, 0.6, 0.9, 100, CostFunction::ScaledAbsolute(3, 0.9));
  EXPECT_TRUE(wide.a3_holds);
  EXPECT_FALSE(wide.a4_holds);

  const auto flat = CheckAssumptions(0.5, 0.7, 0.9, 2, CostFunction::Tabulated({0.0, 0.0}));
  EXPECT_FALSE(flat.a3_holds);

  const auto inside = CheckAssumptions(0.5, 0.4, 0.9, 100, CostFunction::ScaledAbsolute(1, 0.8));
  EXPECT_FALSE(inside.a1_holds);

  const auto edge = CheckAssumptions(0.5, 0.0, 0.3, 10, CostFunction::ScaledAbsolute(1, 0.2));
  EXPECT_FALSE(edge.a2_holds);
}

TEST(CheckAssumptionsTest, TabulatedUniqueMinimizer) {
  const auto report = CheckAssumptions(0.5, 0.7, 0.9, 3, CostFunction::Tabulated({0.2, 0.0, 0.1}));
  EXPECT_TRUE(report.a3_holds);
  EXPECT_DOUBLE_EQ(report.q_star, 0.8);
}

TEST(ScanA4ViolationsTest, ThreeLetterAlphabet) {
  const Distribution p({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const Distribution q_star({0.1, 0.1, 0.8});
  // Q far from p: third coordinate at least 0.75.
  const auto far = ScanA4Violations(p, q_star, [](const Distribution& m) { return m[2] >= 0.75; }, 40);
  EXPECT_FALSE(far.violation_found);
  EXPECT_EQ(far.resolution, 40);
  EXPECT_FALSE(far.note.empty());
  // Q reaching back to p's neighbourhood.
  const auto near = ScanA4Violations(p, q_star, [](const Distribution& m) { return m[2] >= 0.3; }, 40);
  EXPECT_TRUE(near.violation_found);
  EXPECT_LE(KlDivergence(near.witness, p), KlDivergence(near.witness, q_star));
}

TEST(AssumptionConsequenceTest, A4GovernsConcentration) {
  const auto p = kUniform;
  const BayesGameSpec near{0.5, 0.7, 0.9, 100, 1.0, 300, CostFunction::ScaledAbsolute(1, 0.8)};
  ASSERT_TRUE(CheckAssumptions(near).a4_holds);
  const auto eq_a = SolveBayesEquilibrium(BayesGame(near));
  EXPECT_NEAR(EmpiricalExponent(eq_a.eq_error, 300),
              ChernoffExponent(p, Distribution::Binary(0.8)), 0.01);

  const BayesGameSpec wide{0.5, 0.6, 0.9, 100, 1.0, 300, CostFunction::ScaledAbsolute(3, 0.9)};
  ASSERT_FALSE(CheckAssumptions(wide).a4_holds);
  const auto eq_b = SolveBayesEquilibrium(BayesGame(wide));
  EXPECT_GT(std::abs(EmpiricalExponent(eq_b.eq_error, 300) -
                     ChernoffExponent(p, Distribution::Binary(0.9))), 0.05);
}

}  // namespace
}  // namespace advhyp
