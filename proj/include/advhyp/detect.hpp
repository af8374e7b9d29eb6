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

#ifndef ADVHYP_DETECT_HPP_
#define ADVHYP_DETECT_HPP_

// Decision rules for the binary alphabet and exact finite-n error
// probabilities, computed in the log domain.

#include <cstdint>
#include <functional>
#include <vector>

#include "advhyp/prob.hpp"

namespace advhyp {

// Declare H1 (attack) from the count m of 1s among n samples:
//   m >= k      -> always
//   m == k - 1  -> with probability pi
//   m <  k - 1  -> never
// k ranges over {0, ..., n+1}; k = 0 always rejects, k = n+1 with pi = 0
// never rejects.
struct ThresholdRule {
  std::int64_t n = 1;
  std::int64_t k = 0;
  double pi = 0.0;

  static ThresholdRule Deterministic(std::int64_t n, std::int64_t k) { return {n, k, 0.0}; }
  static ThresholdRule AlwaysReject(std::int64_t n) { return {n, 0, 0.0}; }
  static ThresholdRule NeverReject(std::int64_t n) { return {n, n + 1, 0.0}; }

  // Probability of declaring H1 after observing m ones.
  double RejectProbability(std::int64_t m) const;

  void Validate() const;
};

// Log-pmf and both tails of Binomial(n, q1), summed once in fixed index
// order. Every error probability for a given (n, q1) is read from here so
// payoff matrices and per-cell calls agree bit-for-bit.
class BinomialTable {
 public:
  BinomialTable(std::int64_t n, double q1);

  std::int64_t n() const { return n_; }
  // ln P(M = m); -infinity outside [0, n].
  double LogPmf(std::int64_t m) const;
  // ln P(M <= m).
  double LogCdf(std::int64_t m) const;
  // ln P(M >= m).
  double LogSf(std::int64_t m) const;

  double Pmf(std::int64_t m) const;
  double Cdf(std::int64_t m) const;
  double Sf(std::int64_t m) const;

  // Rejection probability of `rule` (P^FA when q = p).
  double RejectProb(const ThresholdRule& rule) const;
  // Acceptance probability of `rule` (missed detection when q is the attacker).
  double AcceptProb(const ThresholdRule& rule) const;
  double LogAcceptProb(const ThresholdRule& rule) const;

 private:
  std::int64_t n_;
  std::vector<double> log_pmf_;
  std::vector<double> log_cdf_;
  std::vector<double> log_sf_;
};

// Type I error (false alarm) of `rule` against null p, d = 2.
double TypeIError(const ThresholdRule& rule, const Distribution& p);

// Type II error (missed detection) of `rule` against attacker q, d = 2.
double TypeIIError(const ThresholdRule& rule, const Distribution& q);

// type_ii(q) + gamma * type_i(p). Exceeds 1 when gamma > 1 and the rule
// rejects often.
double BayesError(const ThresholdRule& rule, const Distribution& q,
                  const Distribution& p, double gamma);

struct ErrorPair {
  double type_i;
  double type_ii;
};

// Decision rule on types: accept H0 iff the observed type is in the set.
class TypeAcceptanceRule {
 public:
  TypeAcceptanceRule(std::int64_t n, std::size_t d, std::vector<TypeVector> accept_set);

  static TypeAcceptanceRule FromPredicate(std::int64_t n, std::size_t d,
                                          const std::function<bool(const TypeVector&)>& accept,
                                          std::size_t cap = kDefaultTypeCap);

  // Same decisions as a deterministic threshold rule (pi must be 0).
  static TypeAcceptanceRule FromThreshold(const ThresholdRule& rule);

  std::int64_t n() const { return n_; }
  std::size_t d() const { return d_; }
  bool Accepts(const TypeVector& tv) const;
  const std::vector<TypeVector>& accept_set() const { return accept_set_; }

 private:
  std::int64_t n_;
  std::size_t d_;
  std::vector<TypeVector> accept_set_;  // sorted, unique
};

// Exact (type_i under p, type_ii under q) by summing type-class
// probabilities over every type in lexicographic order.
ErrorPair TypeRuleErrors(const TypeAcceptanceRule& rule, const Distribution& p,
                         const Distribution& q, std::size_t cap = kDefaultTypeCap);

inline constexpr std::int64_t kOracleMaxN = 12;

// Brute force over all 2^n words: type_i is the rejection probability and
// type_ii the acceptance probability, both under `dist`. Test oracle only.
ErrorPair EnumerationOracleErrors(const ThresholdRule& rule, const Distribution& dist);

}  // namespace advhyp

#endif  // ADVHYP_DETECT_HPP_
