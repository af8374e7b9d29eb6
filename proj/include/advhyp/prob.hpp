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

#ifndef ADVHYP_PROB_HPP_
#define ADVHYP_PROB_HPP_

// Finite-alphabet distributions, information measures and method-of-types
// helpers. All logarithms are natural.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace advhyp {

inline constexpr double kNormalizationTol = 1e-12;

// A probability vector over {0, ..., d-1}, d >= 2. Immutable once built.
class Distribution {
 public:
  // Throws InvalidArgument unless d >= 2, entries are >= 0 and sum to 1
  // within kNormalizationTol. Input is stored as given, never rescaled.
  explicit Distribution(std::vector<double> probs);

  // Rescales a nonnegative vector with positive mass. The only place where
  // normalization happens.
  static Distribution Normalized(std::vector<double> weights);

  // (1 - q1, q1): a binary distribution identified by P(symbol 1).
  static Distribution Binary(double q1);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  bool full_support() const;

  bool operator==(const Distribution&) const = default;

 private:
  std::vector<double> probs_;
};

// Counts of each symbol in a word of length n.
class TypeVector {
 public:
  explicit TypeVector(std::vector<std::int64_t> counts);

  std::size_t size() const { return counts_.size(); }
  std::int64_t n() const { return n_; }
  std::int64_t operator[](std::size_t i) const { return counts_[i]; }
  std::span<const std::int64_t> counts() const { return counts_; }
  // counts / n as a distribution.
  Distribution empirical() const;

  auto operator<=>(const TypeVector& other) const {
    return counts_ <=> other.counts_;
  }
  bool operator==(const TypeVector&) const = default;

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

// D(mu || nu) in nats. +infinity when mu puts mass where nu does not.
double KlDivergence(const Distribution& mu, const Distribution& nu);

double Entropy(const Distribution& mu);

TypeVector EmpiricalType(std::span<const int> word, std::size_t alphabet_size);

inline constexpr std::size_t kDefaultTypeCap = 10'000'000;

// Number of compositions of n into d nonnegative parts, C(n+d-1, d-1),
// saturating at SIZE_MAX.
std::size_t NumTypes(std::int64_t n, std::size_t d);

// All types of length-n words over d symbols in lexicographic order.
std::vector<TypeVector> EnumerateTypes(std::int64_t n, std::size_t d,
                                       std::size_t cap = kDefaultTypeCap);

double LogBinomial(std::int64_t n, std::int64_t k);

// ln P(type class of tv) under q^n, i.e. ln[multinomial(n; counts) prod q_i^c_i].
// -infinity when a positive count meets a zero probability.
double TypeClassLogProb(const TypeVector& tv, const Distribution& q);

struct LogBounds {
  double log_lower;
  double log_upper;
};

// Method-of-types sandwich:
//   -d ln(n+1) - n D(nu||q) <= ln P(class) <= -n D(nu||q).
LogBounds TypeProbBounds(const TypeVector& tv, const Distribution& q);

// ln(exp(a) + exp(b)) without overflow; handles -infinity operands.
double LogAddExp(double a, double b);

// ln sum exp(x_i), accumulated in the given order after max-subtraction.
double LogSumExp(std::span<const double> xs);

}  // namespace advhyp

#endif  // ADVHYP_PROB_HPP_
