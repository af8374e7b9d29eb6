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

#include "advhyp/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "advhyp/error.hpp"

namespace advhyp {
namespace {

struct ColumnLpResult {
  MixedStrategy strategy;
  double value;
  std::int64_t pivots;
};

// Column player of the game `a` (row maximizes). With B = a + shift > 0:
//   maximize sum(w)  s.t.  B w <= 1, w >= 0,
// then y = w / sum(w) and value(a) = 1 / sum(w) - shift.
ColumnLpResult SolveColumnPlayer(const Matrix& a, const LpOptions& opt) {
  const std::size_t m = a.rows();
  const std::size_t c = a.cols();
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (!std::isfinite(a(i, j))) throw InvalidArgument("payoff matrix has a non-finite entry");
      lowest = std::min(lowest, a(i, j));
    }
  }
  const double shift = 1.0 - lowest;

  // Tableau columns: c structural, m slack, then the right-hand side.
  const std::size_t width = c + m + 1;
  const std::size_t rhs = c + m;
  std::vector<double> tab(m * width, 0.0);
  auto at = [&](std::size_t r, std::size_t col) -> double& { return tab[r * width + col]; };
  std::vector<double> obj(width, 0.0);
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < c; ++j) at(i, j) = a(i, j) + shift;
    at(i, c + i) = 1.0;
    at(i, rhs) = 1.0;
    basis[i] = c + i;
  }
  for (std::size_t j = 0; j < c; ++j) obj[j] = -1.0;

  std::int64_t pivots = 0;
  while (true) {
    // Bland: lowest-index improving column.
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (obj[j] < -opt.optimality_tol) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double coef = at(i, enter);
      if (coef <= opt.pivot_tol) continue;
      const double ratio = at(i, rhs) / coef;
      const double slack = 1e-12 * std::max(1.0, std::abs(best_ratio));
      if (leave == m || ratio < best_ratio - slack) {
        leave = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + slack && basis[i] < basis[leave]) {
        leave = i;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    if (leave == m) throw SolverError("simplex: unbounded column LP", std::numeric_limits<double>::infinity());

    if (++pivots > opt.max_pivots) {
      throw SolverError("simplex: pivot cap " + std::to_string(opt.max_pivots) + " reached",
                        std::numeric_limits<double>::infinity());
    }

    const double piv = at(leave, enter);
    for (std::size_t j = 0; j < width; ++j) at(leave, j) /= piv;
    at(leave, enter) = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = at(i, enter);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width; ++j) at(i, j) -= f * at(leave, j);
      at(i, enter) = 0.0;
    }
    const double f = obj[enter];
    for (std::size_t j = 0; j < width; ++j) obj[j] -= f * at(leave, j);
    obj[enter] = 0.0;
    basis[leave] = enter;
  }

  std::vector<double> w(c, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < c) w[basis[i]] = std::max(at(i, rhs), 0.0);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0.0)) throw SolverError("simplex: degenerate zero solution", std::numeric_limits<double>::infinity());
  for (double& v : w) v /= total;
  return {MixedStrategy{std::move(w)}, 1.0 / total - shift, pivots};
}

double MinColumnPayoff(const MixedStrategy& x, const Matrix& a) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < a.cols(); ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.rows(); ++j) s += x[j] * a(j, k);
    lo = std::min(lo, s);
  }
  return lo;
}

double MaxRowPayoff(const Matrix& a, const MixedStrategy& y) {
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < a.rows(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(j, k) * y[k];
    hi = std::max(hi, s);
  }
  return hi;
}

// Advances `idx` to the next size-|idx| subset of {0..n-1} in lexicographic
// order. Returns false after the last one.
bool NextCombination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t pos = k; pos-- > 0;) {
    if (idx[pos] < n - k + pos) {
      ++idx[pos];
      for (std::size_t t = pos + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
      return true;
    }
  }
  return false;
}

// Solves  sum_{i in rows} w_i M(i, j) = v  for j in cols,  sum w = 1.
// `transpose` swaps the roles so the same routine serves both players.
bool SolveIndifference(const Matrix& a, const std::vector<std::size_t>& own,
                       const std::vector<std::size_t>& other, bool transpose,
                       std::vector<double>& weights, double& value) {
  const std::size_t s = own.size();
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(s + 1, s + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
  for (std::size_t r = 0; r < s; ++r) {
    for (std::size_t t = 0; t < s; ++t) {
      sys(r, t) = transpose ? a(other[r], own[t]) : a(own[t], other[r]);
    }
    sys(r, s) = -1.0;
  }
  for (std::size_t t = 0; t < s; ++t) sys(s, t) = 1.0;
  rhs(s) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd sol = lu.solve(rhs);
  weights.assign(sol.data(), sol.data() + s);
  value = sol(s);
  return true;
}

}  // namespace

MixedStrategy MixedStrategy::Pure(std::size_t size, std::size_t index) {
  MixedStrategy s{std::vector<double>(size, 0.0)};
  s.weights.at(index) = 1.0;
  return s;
}

std::vector<std::size_t> MixedStrategy::Support(double threshold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > threshold) out.push_back(i);
  }
  return out;
}

void MixedStrategy::Validate() const {
  if (weights.empty()) throw InvalidArgument("empty mixed strategy");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidArgument("mixed strategy has a negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InvalidArgument("mixed strategy does not sum to 1");
}

double Bilinear(const MixedStrategy& x, const Matrix& a, const MixedStrategy& y) {
  double total = 0.0;
  for (std::size_t j = 0; j < a.rows(); ++j) {
    if (x[j] == 0.0) continue;
    double row = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) row += a(j, k) * y[k];
    total += x[j] * row;
  }
  return total;
}

MatrixGameSolution SolveZeroSumLp(const Matrix& a, const LpOptions& options) {
  if (a.rows() == 0 || a.cols() == 0) throw InvalidArgument("empty payoff matrix");
  if (!(options.tol > 0.0)) throw InvalidArgument("LP tolerance must be > 0");

  ColumnLpResult col = SolveColumnPlayer(a, options);
  // The row player of A is the column player of -A^T.
  ColumnLpResult row = SolveColumnPlayer(a.Negated().Transposed(), options);

  MatrixGameSolution sol;
  sol.row = std::move(row.strategy);
  sol.col = std::move(col.strategy);
  sol.value = col.value;
  sol.pivots = col.pivots + row.pivots;
  sol.duality_gap = MaxRowPayoff(a, sol.col) - MinColumnPayoff(sol.row, a);
  if (!(std::abs(sol.duality_gap) <= options.tol)) {
    throw SolverError("simplex: duality gap " + std::to_string(sol.duality_gap) +
                          " above tolerance",
                      sol.duality_gap);
  }
  return sol;
}

MatrixGameSolution SupportEnumerationNe(const Matrix& a, std::size_t max_dim) {
  const std::size_t m = a.rows();
  const std::size_t c = a.cols();
  if (m == 0 || c == 0) throw InvalidArgument("empty payoff matrix");
  if (m > max_dim || c > max_dim) {
    throw InvalidArgument("support enumeration limited to " + std::to_string(max_dim) +
                          " x " + std::to_string(max_dim));
  }
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < c; ++j) scale = std::max(scale, std::abs(a(i, j)));
  }
  const double tol = 1e-10 * scale;

  for (std::size_t s = 1; s <= std::min(m, c); ++s) {
    std::vector<std::size_t> rows(s);
    std::iota(rows.begin(), rows.end(), 0);
    do {
      std::vector<std::size_t> cols(s);
      std::iota(cols.begin(), cols.end(), 0);
      do {
        std::vector<double> xs, ys;
        double vx = 0.0, vy = 0.0;
        if (!SolveIndifference(a, rows, cols, false, xs, vx)) continue;
        if (!SolveIndifference(a, cols, rows, true, ys, vy)) continue;
        if (std::abs(vx - vy) > tol) continue;
        if (*std::min_element(xs.begin(), xs.end()) < -tol) continue;
        if (*std::min_element(ys.begin(), ys.end()) < -tol) continue;

        MixedStrategy x{std::vector<double>(m, 0.0)};
        MixedStrategy y{std::vector<double>(c, 0.0)};
        for (std::size_t t = 0; t < s; ++t) {
          x.weights[rows[t]] = std::max(xs[t], 0.0);
          y.weights[cols[t]] = std::max(ys[t], 0.0);
        }
        const double lo = MinColumnPayoff(x, a);
        const double hi = MaxRowPayoff(a, y);
        if (lo < vx - tol || hi > vx + tol) continue;
        MatrixGameSolution sol;
        sol.row = std::move(x);
        sol.col = std::move(y);
        sol.value = vx;
        sol.duality_gap = hi - lo;
        return sol;
      } while (NextCombination(cols, c));
    } while (NextCombination(rows, m));
  }
  // Unreachable for finite matrices: some square nonsingular submatrix
  // always yields an extreme equilibrium.
  throw SolverError("support enumeration found no equilibrium", std::numeric_limits<double>::infinity());
}

}  // namespace advhyp
