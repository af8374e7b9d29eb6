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

#include "advhyp/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "advhyp/error.hpp"

namespace advhyp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckSameSize(const Distribution& a, const Distribution& b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("distribution dimensions differ: " +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
}

void CheckSameSize(const TypeVector& tv, const Distribution& q) {
  if (tv.size() != q.size()) {
    throw InvalidArgument("type and distribution dimensions differ");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw InvalidArgument("distribution needs at least 2 symbols");
  }
  double total = 0.0;
  for (double v : probs_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("distribution entries must be finite and >= 0");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kNormalizationTol) {
    throw InvalidArgument("distribution does not sum to 1 (sum = " +
                          std::to_string(total) + ")");
  }
}

Distribution Distribution::Normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double v : weights) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("weights must be finite and >= 0");
    }
    total += v;
  }
  if (!(total > 0.0)) throw InvalidArgument("weights have zero mass");
  for (double& v : weights) v /= total;
  return Distribution(std::move(weights));
}

Distribution Distribution::Binary(double q1) {
  if (!(q1 >= 0.0 && q1 <= 1.0)) {
    throw InvalidArgument("binary probability outside [0, 1]");
  }
  return Distribution({1.0 - q1, q1});
}

bool Distribution::full_support() const {
  return std::all_of(probs_.begin(), probs_.end(), [](double v) { return v > 0.0; });
}

TypeVector::TypeVector(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2) throw InvalidArgument("type needs at least 2 symbols");
  for (auto c : counts_) {
    if (c < 0) throw InvalidArgument("type counts must be nonnegative");
    n_ += c;
  }
}

Distribution TypeVector::empirical() const {
  if (n_ == 0) throw InvalidArgument("empty type has no empirical distribution");
  std::vector<double> probs(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    probs[i] = static_cast<double>(counts_[i]) / static_cast<double>(n_);
  }
  return Distribution::Normalized(std::move(probs));
}

double KlDivergence(const Distribution& mu, const Distribution& nu) {
  CheckSameSize(mu, nu);
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] == 0.0) continue;
    if (nu[i] == 0.0) return kInf;
    sum += mu[i] * std::log(mu[i] / nu[i]);
  }
  // Rounding can leave a tiny negative residue when mu == nu.
  return std::max(sum, 0.0);
}

double Entropy(const Distribution& mu) {
  double h = 0.0;
  for (double v : mu.probs()) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

TypeVector EmpiricalType(std::span<const int> word, std::size_t alphabet_size) {
  if (word.empty()) throw InvalidArgument("empty word");
  std::vector<std::int64_t> counts(alphabet_size, 0);
  for (int x : word) {
    if (x < 0 || static_cast<std::size_t>(x) >= alphabet_size) {
      throw InvalidArgument("symbol " + std::to_string(x) + " outside alphabet");
    }
    ++counts[static_cast<std::size_t>(x)];
  }
  return TypeVector(std::move(counts));
}

std::size_t NumTypes(std::int64_t n, std::size_t d) {
  // C(n + d - 1, d - 1) built incrementally; each partial product is itself a
  // binomial coefficient, so the division is exact.
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t result = 1;
  for (std::size_t i = 1; i < d; ++i) {
    const auto num = static_cast<std::size_t>(n) + i;
    if (result > kMax / num) return kMax;
    result = result * num / i;
  }
  return result;
}

std::vector<TypeVector> EnumerateTypes(std::int64_t n, std::size_t d, std::size_t cap) {
  if (n < 1) throw InvalidArgument("EnumerateTypes: n must be >= 1");
  if (d < 2) throw InvalidArgument("EnumerateTypes: d must be >= 2");
  const std::size_t count = NumTypes(n, d);
  if (count > cap) {
    throw InvalidArgument("EnumerateTypes: " + std::to_string(count) +
                          " types exceed cap " + std::to_string(cap));
  }
  std::vector<TypeVector> out;
  out.reserve(count);
  std::vector<std::int64_t> counts(d, 0);
  counts[d - 1] = n;
  while (true) {
    out.emplace_back(counts);
    // Next composition in lexicographic order: bump the rightmost position
    // that still has mass after it, and move that remaining mass to the end.
    std::int64_t suffix = 0;
    std::size_t pos = d - 1;
    while (pos > 0) {
      suffix += counts[pos];
      --pos;
      if (suffix > 0) break;
    }
    if (suffix == 0) return out;
    ++counts[pos];
    for (std::size_t i = pos + 1; i < d; ++i) counts[i] = 0;
    counts[d - 1] = suffix - 1;
  }
}

double LogBinomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -kInf;
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double TypeClassLogProb(const TypeVector& tv, const Distribution& q) {
  CheckSameSize(tv, q);
  double log_prob = std::lgamma(static_cast<double>(tv.n()) + 1.0);
  for (std::size_t i = 0; i < tv.size(); ++i) {
    const auto c = tv[i];
    log_prob -= std::lgamma(static_cast<double>(c) + 1.0);
    if (c == 0) continue;
    if (q[i] == 0.0) return -kInf;
    log_prob += static_cast<double>(c) * std::log(q[i]);
  }
  return log_prob;
}

LogBounds TypeProbBounds(const TypeVector& tv, const Distribution& q) {
  CheckSameSize(tv, q);
  const double n = static_cast<double>(tv.n());
  const double exponent = n * KlDivergence(tv.empirical(), q);
  const double d = static_cast<double>(tv.size());
  return {-d * std::log(n + 1.0) - exponent, -exponent};
}

double LogAddExp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

double LogSumExp(std::span<const double> xs) {
  double hi = -kInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == -kInf) return -kInf;
  if (hi == kInf) return kInf;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - hi);
  return hi + std::log(sum);
}

}  // namespace advhyp
