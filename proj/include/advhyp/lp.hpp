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

#ifndef ADVHYP_LP_HPP_
#define ADVHYP_LP_HPP_

// Zero-sum matrix games. The row player maximizes x^T A y, the column player
// minimizes it.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "advhyp/games.hpp"

namespace advhyp {

inline constexpr double kSupportThreshold = 1e-12;

struct MixedStrategy {
  std::vector<double> weights;

  static MixedStrategy Pure(std::size_t size, std::size_t index);

  std::size_t size() const { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }
  // Indices with weight > threshold, ascending.
  std::vector<std::size_t> Support(double threshold = kSupportThreshold) const;
  // Throws InvalidArgument unless weights are >= 0 and sum to 1 within 1e-9.
  void Validate() const;
};

struct MatrixGameSolution {
  MixedStrategy row;
  MixedStrategy col;
  double value = 0.0;
  // max_j (A y)_j - min_k (x^T A)_k; zero at an exact equilibrium.
  double duality_gap = 0.0;
  std::int64_t pivots = 0;
};

struct LpOptions {
  double tol = 1e-9;             // accepted duality gap
  double pivot_tol = 1e-11;      // smallest admissible pivot element
  double optimality_tol = 1e-13; // reduced-cost threshold for entering columns
  std::int64_t max_pivots = 1'000'000;
};

// Solves both players' linear programs with a dense tableau simplex using
// Bland's rule. The matrix is shifted to be positive first; the shift is
// removed from the reported value. Throws SolverError (carrying the best gap)
// if the pivot cap is hit or the gap exceeds `tol`.
MatrixGameSolution SolveZeroSumLp(const Matrix& a, const LpOptions& options = {});

inline constexpr std::size_t kDefaultSupportEnumMaxDim = 6;

// Exact equilibrium by enumerating equal-size supports and solving the
// indifference systems. Small matrices only; independent of the simplex.
MatrixGameSolution SupportEnumerationNe(const Matrix& a,
                                        std::size_t max_dim = kDefaultSupportEnumMaxDim);

// x^T A y
double Bilinear(const MixedStrategy& x, const Matrix& a, const MixedStrategy& y);

}  // namespace advhyp

#endif  // ADVHYP_LP_HPP_
