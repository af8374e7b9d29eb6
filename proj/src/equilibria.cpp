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

#include "advhyp/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "advhyp/error.hpp"

namespace advhyp {
namespace {

// Row j of the Bayes error matrix, e_n(q, k) for k = 0..n+1.
std::vector<double> ErrorRow(const BayesGame& game, const BinomialTable& q_table) {
  std::vector<double> row(game.num_thresholds());
  for (std::size_t k = 0; k < row.size(); ++k) {
    const auto rule = ThresholdRule::Deterministic(game.n(), static_cast<std::int64_t>(k));
    row[k] = q_table.AcceptProb(rule) + game.gamma() * game.attacker().p_table().RejectProb(rule);
  }
  return row;
}

std::int64_t ArgMinSmallest(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[best]) best = i;
  }
  return static_cast<std::int64_t>(best);
}

}  // namespace

EquilibriumResult SolveBayesEquilibrium(const BayesGame& game, const LpOptions& options,
                                        int jobs) {
  const Matrix errors = BuildErrorMatrix(game, jobs);
  Matrix payoff = errors;
  for (std::size_t j = 0; j < payoff.rows(); ++j) {
    for (std::size_t k = 0; k < payoff.cols(); ++k) payoff(j, k) -= game.attacker().cost(j);
  }
  MatrixGameSolution sol = SolveZeroSumLp(payoff, options);

  EquilibriumResult result;
  result.attacker = std::move(sol.row);
  result.defender = std::move(sol.col);
  result.value = sol.value;
  result.duality_gap = sol.duality_gap;
  result.pivots = sol.pivots;
  result.eq_error = Bilinear(result.attacker, errors, result.defender);

  double expected_cost = 0.0;
  for (std::size_t j = 0; j < game.num_points(); ++j) {
    expected_cost += result.attacker[j] * game.attacker().cost(j);
  }
  result.identity_residual = std::abs(result.value + expected_cost - result.eq_error);
  result.deviation_gain = VerifyEquilibrium(result, game);
  return result;
}

double VerifyEquilibrium(const EquilibriumResult& result, const BayesGame& game) {
  const std::size_t rows = game.num_points();
  const std::size_t cols = game.num_thresholds();
  if (result.attacker.size() != rows || result.defender.size() != cols) {
    throw InvalidArgument("strategy sizes do not match the game");
  }
  const auto& x = result.attacker;
  const auto& y = result.defender;
  const BinomialTable& p_table = game.attacker().p_table();

  std::vector<double> type_i(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    type_i[k] = p_table.RejectProb(ThresholdRule::Deterministic(game.n(), static_cast<std::int64_t>(k)));
  }

  // Attacker: u^A(j, y) = sum_k y_k type_ii(j, k) - c_j.
  // Defender: u^D(x, k) = -sum_j x_j (type_ii(j, k) + gamma type_i(k)).
  std::vector<double> attacker_payoff(rows, 0.0);
  std::vector<double> defender_payoff(cols, 0.0);
  for (std::size_t j = 0; j < rows; ++j) {
    const BinomialTable table = game.attacker().QTable(j);
    double acc = 0.0;
    for (std::size_t k = 0; k < cols; ++k) {
      const double type_ii =
          table.AcceptProb(ThresholdRule::Deterministic(game.n(), static_cast<std::int64_t>(k)));
      acc += y[k] * type_ii;
      defender_payoff[k] -= x[j] * (type_ii + game.gamma() * type_i[k]);
    }
    attacker_payoff[j] = acc - game.attacker().cost(j);
  }

  double attacker_current = 0.0;
  for (std::size_t j = 0; j < rows; ++j) attacker_current += x[j] * attacker_payoff[j];
  double defender_current = 0.0;
  for (std::size_t k = 0; k < cols; ++k) defender_current += y[k] * defender_payoff[k];

  const double attacker_gain =
      *std::max_element(attacker_payoff.begin(), attacker_payoff.end()) - attacker_current;
  const double defender_gain =
      *std::max_element(defender_payoff.begin(), defender_payoff.end()) - defender_current;
  return std::max(attacker_gain, defender_gain);
}

std::int64_t DefenderBestResponse(const BayesGame& game, std::size_t q_index) {
  return ArgMinSmallest(ErrorRow(game, game.attacker().QTable(q_index)));
}

std::int64_t DefenderBestResponseAt(const BayesGame& game, double q1) {
  if (!(q1 > 0.0 && q1 < 1.0)) throw InvalidArgument("q1 must lie in (0, 1)");
  return ArgMinSmallest(ErrorRow(game, BinomialTable(game.n(), q1)));
}

std::size_t AttackerBestResponse(const BayesGame& game, const ThresholdRule& rule) {
  rule.Validate();
  if (rule.n != game.n()) throw InvalidArgument("rule sample count differs from the game");
  std::size_t best = 0;
  double best_utility = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < game.num_points(); ++j) {
    const double u = game.AttackerUtility(j, rule);
    if (u > best_utility) {
      best = j;
      best_utility = u;
    }
  }
  return best;
}

ThresholdRule NpDominantRule(const Distribution& p, double epsilon, std::int64_t n) {
  if (p.size() != 2) throw InvalidArgument("NpDominantRule: d must be 2");
  if (!p.full_support()) throw InvalidArgument("NpDominantRule: p needs full support");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  const BinomialTable table(n, p[1]);
  // P(M >= 0) = 1 > epsilon and P(M >= n+1) = 0, so 1 <= k <= n+1.
  std::int64_t k = 1;
  while (k <= n && table.Sf(k) > epsilon) ++k;
  const double pi = (epsilon - table.Sf(k)) / table.Pmf(k - 1);
  return ThresholdRule{n, k, std::clamp(pi, 0.0, 1.0)};
}

NpEquilibrium NpPureEquilibrium(const NPGame& game) {
  NpEquilibrium eq;
  eq.rule = NpDominantRule(game.attacker().p(), game.epsilon(), game.n());
  eq.false_alarm = game.attacker().p_table().RejectProb(eq.rule);
  double best_utility = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < game.num_points(); ++j) {
    const double u = game.AttackerUtility(j, eq.rule);
    if (u > best_utility) {
      eq.q_index = j;
      best_utility = u;
    }
  }
  const BinomialTable table = game.attacker().QTable(eq.q_index);
  eq.log_eq_error = table.LogAcceptProb(eq.rule);
  eq.eq_error = std::exp(eq.log_eq_error);
  return eq;
}

double VerifyNpEquilibrium(const NPGame& game, std::size_t q_index, const ThresholdRule& rule) {
  double current = game.AttackerUtility(q_index, rule);
  double attacker_gain = 0.0;
  for (std::size_t j = 0; j < game.num_points(); ++j) {
    attacker_gain = std::max(attacker_gain, game.AttackerUtility(j, rule) - current);
  }
  // The defender's utility is minus the type II error at the attacker's q.
  const BinomialTable table = game.attacker().QTable(q_index);
  const double type_ii = table.AcceptProb(rule);
  double defender_gain = 0.0;
  for (std::int64_t k = 0; k <= game.n() + 1; ++k) {
    const auto alt = ThresholdRule::Deterministic(game.n(), k);
    if (!game.Feasible(alt)) continue;
    defender_gain = std::max(defender_gain, type_ii - table.AcceptProb(alt));
  }
  return std::max(attacker_gain, defender_gain);
}

}  // namespace advhyp
