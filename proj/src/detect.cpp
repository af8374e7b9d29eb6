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

#include "advhyp/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "advhyp/error.hpp"

namespace advhyp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double SafeLog(double x) { return x > 0.0 ? std::log(x) : -kInf; }

void CheckBinary(const Distribution& dist, const char* who) {
  if (dist.size() != 2) {
    throw InvalidArgument(std::string(who) + ": threshold rules need d = 2");
  }
}

}  // namespace

void ThresholdRule::Validate() const {
  if (n < 1) throw InvalidArgument("ThresholdRule: n must be >= 1");
  if (k < 0 || k > n + 1) {
    throw InvalidArgument("ThresholdRule: k = " + std::to_string(k) + " outside [0, n+1]");
  }
  if (!(pi >= 0.0 && pi <= 1.0)) throw InvalidArgument("ThresholdRule: pi outside [0, 1]");
}

double ThresholdRule::RejectProbability(std::int64_t m) const {
  if (m >= k) return 1.0;
  if (m == k - 1) return pi;
  return 0.0;
}

BinomialTable::BinomialTable(std::int64_t n, double q1)
    : n_(n), log_pmf_(n + 1), log_cdf_(n + 1), log_sf_(n + 1) {
  if (n < 1) throw InvalidArgument("BinomialTable: n must be >= 1");
  if (!(q1 >= 0.0 && q1 <= 1.0)) throw InvalidArgument("BinomialTable: q1 outside [0, 1]");
  const double log_q1 = SafeLog(q1);
  const double log_q0 = SafeLog(1.0 - q1);
  for (std::int64_t m = 0; m <= n; ++m) {
    double v = LogBinomial(n, m);
    if (m > 0) v += static_cast<double>(m) * log_q1;
    if (n - m > 0) v += static_cast<double>(n - m) * log_q0;
    log_pmf_[m] = v;
  }
  double acc = -kInf;
  for (std::int64_t m = 0; m <= n; ++m) {
    acc = LogAddExp(acc, log_pmf_[m]);
    log_cdf_[m] = std::min(acc, 0.0);
  }
  acc = -kInf;
  for (std::int64_t m = n; m >= 0; --m) {
    acc = LogAddExp(acc, log_pmf_[m]);
    log_sf_[m] = std::min(acc, 0.0);
  }
}

double BinomialTable::LogPmf(std::int64_t m) const {
  if (m < 0 || m > n_) return -kInf;
  return log_pmf_[m];
}

double BinomialTable::LogCdf(std::int64_t m) const {
  if (m < 0) return -kInf;
  if (m >= n_) return 0.0;
  return log_cdf_[m];
}

double BinomialTable::LogSf(std::int64_t m) const {
  if (m <= 0) return 0.0;
  if (m > n_) return -kInf;
  return log_sf_[m];
}

double BinomialTable::Pmf(std::int64_t m) const { return std::exp(LogPmf(m)); }
double BinomialTable::Cdf(std::int64_t m) const { return std::exp(LogCdf(m)); }
double BinomialTable::Sf(std::int64_t m) const { return std::exp(LogSf(m)); }

// A boundary weight of exactly 0 or 1 folds into the neighbouring tail so
// that deterministic rules read a single table entry.
double BinomialTable::RejectProb(const ThresholdRule& rule) const {
  if (rule.pi == 1.0) return std::exp(LogSf(rule.k - 1));
  double log_p = LogSf(rule.k);
  if (rule.pi > 0.0) log_p = LogAddExp(log_p, SafeLog(rule.pi) + LogPmf(rule.k - 1));
  return std::min(std::exp(log_p), 1.0);
}

double BinomialTable::LogAcceptProb(const ThresholdRule& rule) const {
  if (rule.pi == 0.0) return LogCdf(rule.k - 1);
  double log_p = LogCdf(rule.k - 2);
  if (rule.pi < 1.0) log_p = LogAddExp(log_p, SafeLog(1.0 - rule.pi) + LogPmf(rule.k - 1));
  return std::min(log_p, 0.0);
}

double BinomialTable::AcceptProb(const ThresholdRule& rule) const {
  return std::exp(LogAcceptProb(rule));
}

double TypeIError(const ThresholdRule& rule, const Distribution& p) {
  CheckBinary(p, "TypeIError");
  rule.Validate();
  return BinomialTable(rule.n, p[1]).RejectProb(rule);
}

double TypeIIError(const ThresholdRule& rule, const Distribution& q) {
  CheckBinary(q, "TypeIIError");
  rule.Validate();
  return BinomialTable(rule.n, q[1]).AcceptProb(rule);
}

double BayesError(const ThresholdRule& rule, const Distribution& q,
                  const Distribution& p, double gamma) {
  if (!(gamma > 0.0)) throw InvalidArgument("BayesError: gamma must be > 0");
  return TypeIIError(rule, q) + gamma * TypeIError(rule, p);
}

TypeAcceptanceRule::TypeAcceptanceRule(std::int64_t n, std::size_t d,
                                       std::vector<TypeVector> accept_set)
    : n_(n), d_(d), accept_set_(std::move(accept_set)) {
  if (n < 1 || d < 2) throw InvalidArgument("TypeAcceptanceRule: need n >= 1, d >= 2");
  for (const auto& tv : accept_set_) {
    if (tv.n() != n || tv.size() != d) {
      throw InvalidArgument("TypeAcceptanceRule: member is not a type of (n, d)");
    }
  }
  std::sort(accept_set_.begin(), accept_set_.end());
  accept_set_.erase(std::unique(accept_set_.begin(), accept_set_.end()), accept_set_.end());
}

TypeAcceptanceRule TypeAcceptanceRule::FromPredicate(
    std::int64_t n, std::size_t d, const std::function<bool(const TypeVector&)>& accept,
    std::size_t cap) {
  std::vector<TypeVector> members;
  for (auto& tv : EnumerateTypes(n, d, cap)) {
    if (accept(tv)) members.push_back(std::move(tv));
  }
  return TypeAcceptanceRule(n, d, std::move(members));
}

TypeAcceptanceRule TypeAcceptanceRule::FromThreshold(const ThresholdRule& rule) {
  rule.Validate();
  if (rule.pi != 0.0) {
    throw InvalidArgument("FromThreshold: randomized rules are not type-deterministic");
  }
  return FromPredicate(rule.n, 2, [&](const TypeVector& tv) { return tv[1] < rule.k; });
}

bool TypeAcceptanceRule::Accepts(const TypeVector& tv) const {
  return std::binary_search(accept_set_.begin(), accept_set_.end(), tv);
}

ErrorPair TypeRuleErrors(const TypeAcceptanceRule& rule, const Distribution& p,
                         const Distribution& q, std::size_t cap) {
  if (p.size() != rule.d() || q.size() != rule.d()) {
    throw InvalidArgument("TypeRuleErrors: alphabet sizes disagree");
  }
  double log_type_i = -kInf;
  double log_type_ii = -kInf;
  for (const auto& tv : EnumerateTypes(rule.n(), rule.d(), cap)) {
    if (rule.Accepts(tv)) {
      log_type_ii = LogAddExp(log_type_ii, TypeClassLogProb(tv, q));
    } else {
      log_type_i = LogAddExp(log_type_i, TypeClassLogProb(tv, p));
    }
  }
  return {std::min(std::exp(log_type_i), 1.0), std::min(std::exp(log_type_ii), 1.0)};
}

ErrorPair EnumerationOracleErrors(const ThresholdRule& rule, const Distribution& dist) {
  CheckBinary(dist, "EnumerationOracleErrors");
  rule.Validate();
  if (rule.n > kOracleMaxN) {
    throw InvalidArgument("EnumerationOracleErrors: n > " + std::to_string(kOracleMaxN));
  }
  const auto n = static_cast<unsigned>(rule.n);
  double reject = 0.0;
  double accept = 0.0;
  for (std::uint32_t word = 0; word < (1u << n); ++word) {
    double prob = 1.0;
    std::int64_t ones = 0;
    for (unsigned bit = 0; bit < n; ++bit) {
      const bool one = (word >> bit) & 1u;
      prob *= one ? dist[1] : dist[0];
      ones += one;
    }
    const double r = rule.RejectProbability(ones);
    reject += prob * r;
    accept += prob * (1.0 - r);
  }
  return {reject, accept};
}

}  // namespace advhyp
