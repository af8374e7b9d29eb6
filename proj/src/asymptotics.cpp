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

#include "advhyp/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "advhyp/error.hpp"

namespace advhyp {
namespace {

void RequireFullSupport(const Distribution& d, const char* who) {
  if (!d.full_support()) throw InvalidArgument(std::string(who) + ": needs full support");
}

void RequireSameSize(const Distribution& a, const Distribution& b) {
  if (a.size() != b.size()) throw InvalidArgument("distribution dimensions differ");
}

template <typename Spec>
AssumptionReport CheckSpec(const Spec& spec) {
  return CheckAssumptions(spec.p1, spec.q_lo, spec.q_hi, spec.grid_size, spec.cost);
}

}  // namespace

double LogMgfLlr(const Distribution& p, const Distribution& q, double lambda) {
  RequireSameSize(p, q);
  RequireFullSupport(p, "LogMgfLlr");
  RequireFullSupport(q, "LogMgfLlr");
  std::vector<double> terms(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    terms[i] = (1.0 - lambda) * std::log(p[i]) + lambda * std::log(q[i]);
  }
  return LogSumExp(terms);
}

double ChernoffExponent(const Distribution& p, const Distribution& q, double tol) {
  RequireSameSize(p, q);
  if (p == q) throw InvalidArgument("ChernoffExponent: p == q has exponent 0");
  if (!(tol > 0.0)) throw InvalidArgument("ChernoffExponent: tol must be > 0");
  auto f = [&](double lambda) { return -LogMgfLlr(p, q, lambda); };
  // -LogMgfLlr is concave and vanishes at both ends of [0, 1].
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = 1.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({f1, f2, f(0.5 * (lo + hi)), 0.0});
}

Distribution BalancePoint(const Distribution& p, const Distribution& q) {
  RequireSameSize(p, q);
  RequireFullSupport(p, "BalancePoint");
  RequireFullSupport(q, "BalancePoint");
  if (p == q) throw InvalidArgument("BalancePoint: p == q");
  const std::size_t d = p.size();
  auto point = [&](double t) {
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = (1.0 - t) * p[i] + t * q[i];
    return v;
  };
  // g(t) = D(nu_t||p) - D(nu_t||q) = sum_i nu_t(i) ln(q_i / p_i), increasing in t.
  auto g = [&](double t) {
    const auto v = point(t);
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) s += v[i] * std::log(q[i] / p[i]);
    return s;
  };
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return Distribution::Normalized(point(0.5 * (lo + hi)));
}

double BalancePointClosedForm(const Distribution& p, const Distribution& q) {
  if (p.size() != 2 || q.size() != 2) throw InvalidArgument("closed form needs d = 2");
  RequireFullSupport(p, "BalancePointClosedForm");
  RequireFullSupport(q, "BalancePointClosedForm");
  if (p == q) throw InvalidArgument("BalancePointClosedForm: p == q");
  const double a = std::log(p[0] / q[0]);
  const double b = std::log(q[1] / p[1]);
  return a / (a + b);
}

double SteinExponent(const Distribution& p, const Distribution& q) {
  RequireFullSupport(p, "SteinExponent");
  RequireFullSupport(q, "SteinExponent");
  return KlDivergence(p, q);
}

double EmpiricalExponent(double error, std::int64_t n) {
  if (n < 1) throw InvalidArgument("EmpiricalExponent: n must be >= 1");
  if (!(error > 0.0)) throw InvalidArgument("EmpiricalExponent: error must be > 0");
  return -std::log(error) / static_cast<double>(n);
}

double SlopeExponent(double log_error_a, std::int64_t n_a, double log_error_b,
                     std::int64_t n_b) {
  if (n_b <= n_a) throw InvalidArgument("SlopeExponent: need n_b > n_a");
  return -(log_error_b - log_error_a) / static_cast<double>(n_b - n_a);
}

AssumptionReport CheckAssumptions(double p1, double q_lo, double q_hi, int grid_size,
                                  const CostFunction& cost) {
  AssumptionReport report;
  const std::vector<double> grid = AttackerGrid(q_lo, q_hi, grid_size);
  std::ostringstream note;

  report.a1_holds = p1 < q_lo || p1 > q_hi;
  if (!report.a1_holds) report.notes.push_back("A1: p lies inside Q");

  report.a2_holds = p1 > 0.0 && p1 < 1.0 && q_lo > 0.0 && q_hi < 1.0;
  if (!report.a2_holds) report.notes.push_back("A2: p or a point of Q lacks full support");

  if (cost.kind() == CostFunction::Kind::kTabulated) {
    if (cost.values().size() != grid.size()) {
      throw InvalidArgument("tabulated cost length does not match the grid");
    }
    const auto& v = cost.values();
    const auto best = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j != best) second = std::min(second, v[j]);
    }
    report.q_star = grid[best];
    report.a3_holds = second - v[best] > 1e-12;
    if (!report.a3_holds) report.notes.push_back("A3: cost minimizer on the grid is not unique");
  } else {
    // |q - q*| and (q - q*)^2 have the single minimizer clamp(q*, Q) on the
    // interval whenever the scale is positive.
    report.q_star = std::clamp(cost.q_star(), q_lo, q_hi);
    report.a3_holds = cost.scale() > 0.0;
    if (!report.a3_holds) report.notes.push_back("A3: zero cost, every point of Q minimizes");
  }

  if (report.a1_holds && report.a2_holds) {
    const double nu = BalancePointClosedForm(Distribution::Binary(p1),
                                             Distribution::Binary(report.q_star));
    report.a4_balance_point = nu;
    report.a4_holds = p1 < report.q_star ? nu < q_lo : nu > q_hi;
    if (!report.a4_holds) {
      note << "A4: balance point " << nu << " lies in or beyond Q = [" << q_lo << ", " << q_hi
           << "]";
      report.notes.push_back(note.str());
    }
  } else {
    report.notes.push_back("A4: not evaluated (A1 or A2 fails)");
  }
  return report;
}

AssumptionReport CheckAssumptions(const BayesGameSpec& spec) { return CheckSpec(spec); }
AssumptionReport CheckAssumptions(const NPGameSpec& spec) { return CheckSpec(spec); }

A4ScanResult ScanA4Violations(const Distribution& p, const Distribution& q_star,
                              const std::function<bool(const Distribution&)>& in_q,
                              int resolution) {
  RequireSameSize(p, q_star);
  RequireFullSupport(p, "ScanA4Violations");
  RequireFullSupport(q_star, "ScanA4Violations");
  if (resolution < 1) throw InvalidArgument("ScanA4Violations: resolution must be >= 1");
  A4ScanResult result;
  result.resolution = resolution;
  for (const auto& tv : EnumerateTypes(resolution, p.size())) {
    const Distribution mu = tv.empirical();
    if (!in_q(mu)) continue;
    if (KlDivergence(mu, p) <= KlDivergence(mu, q_star)) {
      result.violation_found = true;
      result.witness = mu;
      result.note = "violation found at resolution " + std::to_string(resolution);
      return result;
    }
  }
  result.note = "no violation found at resolution " + std::to_string(resolution);
  return result;
}

}  // namespace advhyp
