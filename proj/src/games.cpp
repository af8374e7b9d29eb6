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

#include "advhyp/games.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "advhyp/error.hpp"

namespace advhyp {
namespace {

void CheckCostParams(double scale, double q_star) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("cost scale must be finite and >= 0");
  }
  if (!(q_star > 0.0 && q_star < 1.0)) throw InvalidArgument("cost q_star outside (0, 1)");
}

std::int64_t CheckedSampleCount(std::int64_t n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (n + 2 > kMaxThresholds) throw InvalidArgument("n too large for the threshold cap");
  return n;
}

// Runs body(row) for every row, splitting rows across up to `jobs` threads.
template <typename Body>
void ForEachRow(std::size_t rows, int jobs, Body&& body) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || rows < 2) {
    for (std::size_t r = 0; r < rows; ++r) body(r);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, rows); ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t r = w; r < rows; r += workers) body(r);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

CostFunction CostFunction::ScaledAbsolute(double scale, double q_star) {
  CheckCostParams(scale, q_star);
  return CostFunction(Kind::kScaledAbsolute, scale, q_star, {});
}

CostFunction CostFunction::ScaledQuadratic(double scale, double q_star) {
  CheckCostParams(scale, q_star);
  return CostFunction(Kind::kScaledQuadratic, scale, q_star, {});
}

CostFunction CostFunction::Tabulated(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("tabulated cost needs values");
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("tabulated cost values must be finite and >= 0");
    }
  }
  return CostFunction(Kind::kTabulated, 0.0, 0.0, std::move(values));
}

double CostFunction::operator()(double q1, std::size_t index) const {
  switch (kind_) {
    case Kind::kScaledAbsolute:
      return scale_ * std::abs(q1 - q_star_);
    case Kind::kScaledQuadratic:
      return scale_ * (q1 - q_star_) * (q1 - q_star_);
    case Kind::kTabulated:
      return values_.at(index);
  }
  return 0.0;
}

std::string CostFunction::Describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kScaledAbsolute:
      os << scale_ << "*|q-" << q_star_ << "|";
      break;
    case Kind::kScaledQuadratic:
      os << scale_ << "*(q-" << q_star_ << ")^2";
      break;
    case Kind::kTabulated:
      os << "tabulated[" << values_.size() << "]";
      break;
  }
  return os.str();
}

std::vector<double> AttackerGrid(double q_lo, double q_hi, int grid_size) {
  if (!(q_lo <= q_hi)) throw InvalidArgument("attacker interval needs q_lo <= q_hi");
  if (grid_size < 1 || grid_size > kMaxGridSize) {
    throw InvalidArgument("grid_size must be in [1, " + std::to_string(kMaxGridSize) + "]");
  }
  if (q_lo == q_hi || grid_size == 1) {
    if (q_lo != q_hi) throw InvalidArgument("grid_size 1 needs q_lo == q_hi");
    return {q_lo};
  }
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  const double step = (q_hi - q_lo) / static_cast<double>(grid_size - 1);
  for (int j = 0; j < grid_size; ++j) grid[j] = q_lo + step * static_cast<double>(j);
  grid.back() = q_hi;
  return grid;
}

AttackerSide::AttackerSide(double p1, double q_lo, double q_hi, int grid_size,
                           std::int64_t n, const CostFunction& cost)
    : n_(n),
      p_(Distribution::Binary(p1)),
      grid_(AttackerGrid(q_lo, q_hi, grid_size)),
      p_table_(CheckedSampleCount(n), p1) {
  if (!(p1 > 0.0 && p1 < 1.0)) throw InvalidArgument("p1 must lie in (0, 1)");
  if (!(q_lo > 0.0 && q_hi < 1.0)) {
    throw InvalidArgument("attacker interval must lie inside (0, 1)");
  }
  if (p1 >= q_lo && p1 <= q_hi) {
    throw InvalidArgument("p1 lies inside the attacker interval");
  }
  if (cost.kind() == CostFunction::Kind::kTabulated && cost.values().size() != grid_.size()) {
    throw InvalidArgument("tabulated cost length does not match the grid");
  }
  costs_.reserve(grid_.size());
  for (std::size_t j = 0; j < grid_.size(); ++j) costs_.push_back(cost(grid_[j], j));
}

BayesGame::BayesGame(const BayesGameSpec& spec)
    : spec_(spec),
      side_(spec.p1, spec.q_lo, spec.q_hi, spec.grid_size, spec.n, spec.cost) {
  if (!(spec.gamma > 0.0) || !std::isfinite(spec.gamma)) {
    throw InvalidArgument("gamma must be finite and > 0");
  }
}

double BayesGame::AttackerUtility(std::size_t q_index, const ThresholdRule& rule) const {
  return side_.QTable(q_index).AcceptProb(rule) - side_.cost(q_index);
}

double BayesGame::BayesErrorAt(std::size_t q_index, const ThresholdRule& rule) const {
  return side_.QTable(q_index).AcceptProb(rule) +
         spec_.gamma * side_.p_table().RejectProb(rule);
}

double BayesGame::DefenderUtility(std::size_t q_index, const ThresholdRule& rule) const {
  return -BayesErrorAt(q_index, rule);
}

double BayesGame::ZeroSumPayoff(std::size_t q_index, const ThresholdRule& rule) const {
  return BayesErrorAt(q_index, rule) - side_.cost(q_index);
}

NPGame::NPGame(const NPGameSpec& spec)
    : spec_(spec),
      side_(spec.p1, spec.q_lo, spec.q_hi, spec.grid_size, spec.n, spec.cost) {
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }
}

bool NPGame::Feasible(const ThresholdRule& rule) const {
  return side_.p_table().RejectProb(rule) <= spec_.epsilon + 1e-12;
}

double NPGame::AttackerUtility(std::size_t q_index, const ThresholdRule& rule) const {
  if (!Feasible(rule)) {
    throw InvalidArgument("rule violates the false-alarm constraint");
  }
  return side_.QTable(q_index).AcceptProb(rule) - side_.cost(q_index);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidArgument("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::Negated() const {
  Matrix m = *this;
  for (double& v : m.data_) v = -v;
  return m;
}

Matrix BuildErrorMatrix(const BayesGame& game, int jobs) {
  const auto& side = game.attacker();
  const std::size_t cols = game.num_thresholds();
  // Type I error depends only on k.
  std::vector<double> type_i(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    type_i[k] = side.p_table().RejectProb(ThresholdRule::Deterministic(game.n(), k));
  }
  Matrix errors(side.num_points(), cols);
  ForEachRow(side.num_points(), jobs, [&](std::size_t j) {
    const BinomialTable table = side.QTable(j);
    for (std::size_t k = 0; k < cols; ++k) {
      const auto rule = ThresholdRule::Deterministic(game.n(), static_cast<std::int64_t>(k));
      errors(j, k) = table.AcceptProb(rule) + game.gamma() * type_i[k];
    }
  });
  return errors;
}

PayoffMatrix BuildPayoffMatrix(const BayesGame& game, int jobs) {
  PayoffMatrix m = BuildErrorMatrix(game, jobs);
  for (std::size_t j = 0; j < m.rows(); ++j) {
    const double c = game.attacker().cost(j);
    for (std::size_t k = 0; k < m.cols(); ++k) m(j, k) -= c;
  }
  return m;
}

}  // namespace advhyp
