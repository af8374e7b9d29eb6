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

#ifndef ADVHYP_ASYMPTOTICS_HPP_
#define ADVHYP_ASYMPTOTICS_HPP_

// Error exponents in nats and the geometric checks on the attacker set.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "advhyp/games.hpp"
#include "advhyp/prob.hpp"

namespace advhyp {

// ln sum_i p_i^(1-lambda) q_i^lambda: log-MGF of ln(q(X)/p(X)) under X ~ p.
double LogMgfLlr(const Distribution& p, const Distribution& q, double lambda);

// Chernoff information sup_lambda -LogMgfLlr(p, q, lambda), maximized by
// golden-section search on [0, 1].
double ChernoffExponent(const Distribution& p, const Distribution& q, double tol = 1e-10);

// The point nu on the segment [p, q] with D(nu||p) = D(nu||q), by bisection.
Distribution BalancePoint(const Distribution& p, const Distribution& q);

// Closed form of the balance point's P(symbol 1) for d = 2.
double BalancePointClosedForm(const Distribution& p, const Distribution& q);

// D(p || q): the type II exponent at a fixed false-alarm level.
double SteinExponent(const Distribution& p, const Distribution& q);

// -ln(error) / n. Throws InvalidArgument when error <= 0.
double EmpiricalExponent(double error, std::int64_t n);
// -(ln e_b - ln e_a) / (n_b - n_a), the local slope between two sweep points.
double SlopeExponent(double log_error_a, std::int64_t n_a, double log_error_b, std::int64_t n_b);

struct AssumptionReport {
  bool a1_holds = false;  // p outside Q
  bool a2_holds = false;  // full support of p and every grid point
  bool a3_holds = false;  // unique cost minimizer q*
  bool a4_holds = false;  // balance set {mu : D(mu||p) <= D(mu||q*)} misses Q
  double q_star = 0.0;
  double a4_balance_point = 0.0;
  std::vector<std::string> notes;
};

// Works on the raw interval description so violations are observable; the
// game constructors reject A1/A2 violations outright.
AssumptionReport CheckAssumptions(double p1, double q_lo, double q_hi, int grid_size,
                                  const CostFunction& cost);
AssumptionReport CheckAssumptions(const BayesGameSpec& spec);
AssumptionReport CheckAssumptions(const NPGameSpec& spec);

struct A4ScanResult {
  bool violation_found = false;
  Distribution witness = Distribution::Binary(0.5);
  int resolution = 0;
  std::string note;
};

// General-d check of the balance-set condition: scans the simplex grid
// {counts / resolution} for a point inside Q with D(mu||p) <= D(mu||q*).
// A clean scan means "no violation found at this resolution", not a proof.
A4ScanResult ScanA4Violations(const Distribution& p, const Distribution& q_star,
                              const std::function<bool(const Distribution&)>& in_q,
                              int resolution);

}  // namespace advhyp

#endif  // ADVHYP_ASYMPTOTICS_HPP_
