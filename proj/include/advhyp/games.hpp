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

#ifndef ADVHYP_GAMES_HPP_
#define ADVHYP_GAMES_HPP_

// Bayesian and Neyman-Pearson hypothesis-testing games on the binary
// alphabet. Distributions are identified with P(symbol 1); the attacker picks
// from an equally spaced grid on [q_lo, q_hi] and pays cost c(q).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advhyp/detect.hpp"
#include "advhyp/prob.hpp"

namespace advhyp {

class CostFunction {
 public:
  enum class Kind { kScaledAbsolute, kScaledQuadratic, kTabulated };

  // a * |q - q_star|
  static CostFunction ScaledAbsolute(double scale, double q_star);
  // a * (q - q_star)^2
  static CostFunction ScaledQuadratic(double scale, double q_star);
  // Explicit values, one per attacker grid point.
  static CostFunction Tabulated(std::vector<double> values);

  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  double q_star() const { return q_star_; }
  const std::vector<double>& values() const { return values_; }

  // Cost of grid point `index` located at q1.
  double operator()(double q1, std::size_t index) const;

  std::string Describe() const;

 private:
  CostFunction(Kind kind, double scale, double q_star, std::vector<double> values)
      : kind_(kind), scale_(scale), q_star_(q_star), values_(std::move(values)) {}

  Kind kind_;
  double scale_ = 0.0;
  double q_star_ = 0.0;
  std::vector<double> values_;
};

inline constexpr int kDefaultGridSize = 100;
inline constexpr std::int64_t kMaxThresholds = 10'000;
inline constexpr int kMaxGridSize = 10'000;

struct BayesGameSpec {
  double p1 = 0.5;
  double q_lo = 0.0;
  double q_hi = 0.0;
  int grid_size = kDefaultGridSize;
  double gamma = 1.0;
  std::int64_t n = 1;
  CostFunction cost = CostFunction::ScaledAbsolute(1.0, 0.5);
};

struct NPGameSpec {
  double p1 = 0.5;
  double q_lo = 0.0;
  double q_hi = 0.0;
  int grid_size = kDefaultGridSize;
  double epsilon = 0.1;
  std::int64_t n = 1;
  CostFunction cost = CostFunction::ScaledAbsolute(1.0, 0.5);
};

// Equally spaced points on [q_lo, q_hi] including both ends; a single point
// when q_lo == q_hi.
std::vector<double> AttackerGrid(double q_lo, double q_hi, int grid_size);

// The attacker side shared by both games: grid, costs and the null p.
// Construction validates the spec (ranges, full support, p1 outside Q).
class AttackerSide {
 public:
  AttackerSide(double p1, double q_lo, double q_hi, int grid_size, std::int64_t n,
               const CostFunction& cost);

  std::int64_t n() const { return n_; }
  const Distribution& p() const { return p_; }
  std::size_t num_points() const { return grid_.size(); }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& costs() const { return costs_; }
  double q1(std::size_t index) const { return grid_.at(index); }
  Distribution q(std::size_t index) const { return Distribution::Binary(q1(index)); }
  double cost(std::size_t index) const { return costs_.at(index); }
  // Binomial(n, q_j) table for grid point j, built on demand.
  BinomialTable QTable(std::size_t index) const { return BinomialTable(n_, q1(index)); }
  const BinomialTable& p_table() const { return p_table_; }

 private:
  std::int64_t n_;
  Distribution p_;
  std::vector<double> grid_;
  std::vector<double> costs_;
  BinomialTable p_table_;
};

class BayesGame {
 public:
  explicit BayesGame(const BayesGameSpec& spec);

  const BayesGameSpec& spec() const { return spec_; }
  const AttackerSide& attacker() const { return side_; }
  std::int64_t n() const { return spec_.n; }
  double gamma() const { return spec_.gamma; }
  std::size_t num_points() const { return side_.num_points(); }
  // Thresholds k = 0..n+1.
  std::size_t num_thresholds() const { return static_cast<std::size_t>(spec_.n) + 2; }

  // u^A = type_ii(rule, q_j) - c(q_j).
  double AttackerUtility(std::size_t q_index, const ThresholdRule& rule) const;
  // u^D = -(type_ii(rule, q_j) + gamma * type_i(rule, p)).
  double DefenderUtility(std::size_t q_index, const ThresholdRule& rule) const;
  // Zero-sum equivalent payoff, maximized by the attacker:
  //   type_ii + gamma * type_i - c(q_j).
  double ZeroSumPayoff(std::size_t q_index, const ThresholdRule& rule) const;
  double BayesErrorAt(std::size_t q_index, const ThresholdRule& rule) const;

 private:
  BayesGameSpec spec_;
  AttackerSide side_;
};

class NPGame {
 public:
  explicit NPGame(const NPGameSpec& spec);

  const NPGameSpec& spec() const { return spec_; }
  const AttackerSide& attacker() const { return side_; }
  std::int64_t n() const { return spec_.n; }
  double epsilon() const { return spec_.epsilon; }
  std::size_t num_points() const { return side_.num_points(); }

  // Throws InvalidArgument if the rule's false-alarm probability exceeds
  // epsilon (beyond 1e-12): such rules are outside the defender's strategy set.
  double AttackerUtility(std::size_t q_index, const ThresholdRule& rule) const;
  bool Feasible(const ThresholdRule& rule) const;

 private:
  NPGameSpec spec_;
  AttackerSide side_;
};

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Matrix Transposed() const;
  Matrix Negated() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Zero-sum equivalent payoff: rows are attacker grid points, columns are
// deterministic thresholds k = 0..n+1.
using PayoffMatrix = Matrix;

// `jobs` > 1 fills rows concurrently; the result is identical to jobs = 1.
PayoffMatrix BuildPayoffMatrix(const BayesGame& game, int jobs = 1);

// Bayes error e_n(q_j, k) for every cell.
Matrix BuildErrorMatrix(const BayesGame& game, int jobs = 1);

}  // namespace advhyp

#endif  // ADVHYP_GAMES_HPP_
