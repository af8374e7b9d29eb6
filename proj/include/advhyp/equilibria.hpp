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

#ifndef ADVHYP_EQUILIBRIA_HPP_
#define ADVHYP_EQUILIBRIA_HPP_

#include <cstddef>
#include <cstdint>

#include "advhyp/games.hpp"
#include "advhyp/lp.hpp"

namespace advhyp {

struct EquilibriumResult {
  MixedStrategy attacker;  // over the attacker grid
  MixedStrategy defender;  // over thresholds k = 0..n+1
  double value = 0.0;      // value of the zero-sum equivalent game
  // Expected Bayes error sum_j sum_k x_j y_k e_n(q_j, k).
  double eq_error = 0.0;
  // Largest gain from a pure deviation in the original utilities.
  double deviation_gain = 0.0;
  double duality_gap = 0.0;
  // |value + sum_j x_j c(q_j) - eq_error|
  double identity_residual = 0.0;
  std::int64_t pivots = 0;
};

// Mixed equilibrium of the discretized Bayesian game with deterministic
// threshold rules, via the zero-sum equivalent payoff matrix.
EquilibriumResult SolveBayesEquilibrium(const BayesGame& game, const LpOptions& options = {},
                                        int jobs = 1);

// Max over pure deviations of either player's utility gain against the
// opponent's mix, in the original (nonzero-sum) utilities.
double VerifyEquilibrium(const EquilibriumResult& result, const BayesGame& game);

// argmin_k bayes_error(q, k) over k = 0..n+1, smallest k on ties.
std::int64_t DefenderBestResponse(const BayesGame& game, std::size_t q_index);
// Same for an arbitrary attacker distribution (not necessarily on the grid).
std::int64_t DefenderBestResponseAt(const BayesGame& game, double q1);

// argmax_j attacker_utility(j, rule), smallest index on ties.
std::size_t AttackerBestResponse(const BayesGame& game, const ThresholdRule& rule);

// Most powerful level-epsilon test: k is the smallest threshold with
// P_p(M >= k) <= epsilon and pi fills the remaining false-alarm budget at
// M = k - 1, so the false-alarm probability equals epsilon.
ThresholdRule NpDominantRule(const Distribution& p, double epsilon, std::int64_t n);

struct NpEquilibrium {
  std::size_t q_index = 0;
  ThresholdRule rule;
  double eq_error = 0.0;      // type II error at (q_index, rule)
  double log_eq_error = 0.0;  // its natural log, exact even when eq_error underflows
  double false_alarm = 0.0;
};

// Pure equilibrium: the dominant rule and the attacker's best response to it.
NpEquilibrium NpPureEquilibrium(const NPGame& game);

// Deviation certificate for a pure NP profile. Defender deviations range over
// feasible deterministic thresholds.
double VerifyNpEquilibrium(const NPGame& game, std::size_t q_index, const ThresholdRule& rule);

}  // namespace advhyp

#endif  // ADVHYP_EQUILIBRIA_HPP_
