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

#include "advhyp/experiments.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "advhyp/asymptotics.hpp"
#include "advhyp/equilibria.hpp"
#include "advhyp/error.hpp"
#include "json.hpp"

namespace advhyp {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Runs task(i) for i in [0, count) on up to `jobs` threads. Each task writes
// only its own slot, so output order never depends on scheduling.
template <typename Task>
void ParallelFor(std::size_t count, int jobs, Task&& task) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
  for (auto& t : pool) t.join();
}

double ElapsedMs(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

SweepRow SolveBayesRow(const RunConfig& config, std::int64_t n) {
  const auto start = std::chrono::steady_clock::now();
  SweepRow row;
  row.n = n;
  try {
    const BayesGame game(config.BayesSpec(n));
    LpOptions options;
    options.tol = config.lp_tol;
    const EquilibriumResult eq = SolveBayesEquilibrium(game, options);

    const auto attacker = eq.attacker.Support();
    const auto defender = eq.defender.Support();
    const auto& grid = game.attacker().grid();
    row.eq_error = eq.eq_error;
    row.log_eq_error = eq.eq_error > 0.0 ? std::log(eq.eq_error)
                                         : -std::numeric_limits<double>::infinity();
    row.attacker_support_min = grid[attacker.front()];
    row.attacker_support_max = grid[attacker.back()];
    const auto mode = std::max_element(eq.attacker.weights.begin(), eq.attacker.weights.end());
    row.attacker_mode = grid[static_cast<std::size_t>(mode - eq.attacker.weights.begin())];
    row.defender_k_min = static_cast<std::int64_t>(defender.front());
    row.defender_k_max = static_cast<std::int64_t>(defender.back());
    row.deviation_gain = eq.deviation_gain;
  } catch (const SolverError& e) {
    row.status = std::string("solver_error: ") + e.what();
    row.eq_error = std::numeric_limits<double>::quiet_NaN();
    row.log_eq_error = row.eq_error;
  }
  row.wall_ms = ElapsedMs(start);
  return row;
}

SweepRow SolveNpRow(const RunConfig& config, std::int64_t n) {
  const auto start = std::chrono::steady_clock::now();
  SweepRow row;
  row.n = n;
  const NPGame game(config.NpSpec(n));
  const NpEquilibrium eq = NpPureEquilibrium(game);
  const double q = game.attacker().q1(eq.q_index);
  row.eq_error = eq.eq_error;
  row.log_eq_error = eq.log_eq_error;
  row.attacker_support_min = q;
  row.attacker_support_max = q;
  row.attacker_mode = q;
  row.defender_k_min = eq.rule.k;
  row.defender_k_max = eq.rule.k;
  row.defender_pi = eq.rule.pi;
  row.deviation_gain = VerifyNpEquilibrium(game, eq.q_index, eq.rule);
  row.wall_ms = ElapsedMs(start);
  return row;
}

// JSON has no inf/nan; those are written as strings.
json Number(double v) {
  if (std::isfinite(v)) return v;
  return FormatDouble(v);
}

json RowJson(const SweepRow& row, bool np) {
  json j;
  j["n"] = row.n;
  j["eq_error"] = Number(row.eq_error);
  j["log_eq_error"] = Number(row.log_eq_error);
  j["exponent"] = Number(row.exponent);
  j["attacker_support_min"] = row.attacker_support_min;
  j["attacker_support_max"] = row.attacker_support_max;
  j["attacker_mode"] = row.attacker_mode;
  j["defender_k_min"] = row.defender_k_min;
  j["defender_k_max"] = row.defender_k_max;
  if (np) j["defender_pi"] = row.defender_pi;
  j["deviation_gain"] = row.deviation_gain;
  j["status"] = row.status;
  j["wall_ms"] = row.wall_ms;
  return j;
}

bool IsNp(const RunConfig& config) {
  return config.kind == ExperimentKind::kExponentSweepNp ||
         config.kind == ExperimentKind::kNpEquilibrium;
}

json ManifestHeader(const RunConfig& config) {
  json j;
  j["tool"] = "advhyp";
  j["version"] = kLibraryVersion;
  j["experiment"] = std::string(ToString(config.kind));
  j["config"] = json::parse(ConfigJson(config));
  return j;
}

void RemoveQuietly(const fs::path& path) {
  std::error_code ec;
  fs::remove(path, ec);
}

}  // namespace

std::vector<SweepRow> RunExponentSweep(const RunConfig& config) {
  std::vector<SweepRow> rows(config.n_values.size());
  ParallelFor(rows.size(), config.jobs,
              [&](std::size_t i) { rows[i] = SolveBayesRow(config, config.n_values[i]); });
  AssignExponents(rows, config.exponent_mode);
  return rows;
}

std::vector<SweepRow> RunNpExperiment(const RunConfig& config) {
  std::vector<SweepRow> rows(config.n_values.size());
  ParallelFor(rows.size(), config.jobs,
              [&](std::size_t i) { rows[i] = SolveNpRow(config, config.n_values[i]); });
  AssignExponents(rows, config.exponent_mode);
  return rows;
}

void AssignExponents(std::vector<SweepRow>& rows, ExponentMode mode) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    if (std::isnan(row.log_eq_error)) {
      row.exponent = std::numeric_limits<double>::quiet_NaN();
    } else if (row.log_eq_error == -kInf) {
      row.exponent = kInf;
    } else if (mode == ExponentMode::kSlope && i > 0 && std::isfinite(rows[i - 1].log_eq_error)) {
      row.exponent =
          SlopeExponent(rows[i - 1].log_eq_error, rows[i - 1].n, row.log_eq_error, row.n);
    } else {
      row.exponent = -row.log_eq_error / static_cast<double>(row.n);
    }
  }
}

BestResponseScan RunBestResponseScan(const RunConfig& config) {
  const std::int64_t n = config.n_values.at(0);
  const BayesGame game(config.BayesSpec(n));
  const auto& grid = game.attacker().grid();

  BestResponseScan scan;
  scan.n = n;
  std::vector<std::int64_t> defender_br(grid.size());
  ParallelFor(grid.size(), config.jobs,
              [&](std::size_t j) { defender_br[j] = DefenderBestResponse(game, j); });
  for (std::size_t j = 0; j < grid.size(); ++j) {
    scan.defender_curve.push_back({j, grid[j], defender_br[j]});
  }

  const std::int64_t q_star = config.cost_kind == "table"
                                  ? static_cast<std::int64_t>(-1)
                                  : DefenderBestResponseAt(game, config.q_star);
  std::int64_t centre = q_star;
  if (centre < 0) {
    const auto report = CheckAssumptions(config.BayesSpec(n));
    centre = DefenderBestResponseAt(game, report.q_star);
  }
  scan.q_star_threshold = centre;
  const std::int64_t window = config.threshold_window;
  const std::int64_t first = std::clamp<std::int64_t>(centre - window / 2, 0, n + 1);
  const std::int64_t last = std::min<std::int64_t>(first + window - 1, n + 1);
  for (std::int64_t k = first; k <= last; ++k) {
    const std::size_t j = AttackerBestResponse(game, ThresholdRule::Deterministic(n, k));
    scan.attacker_curve.push_back({j, grid[j], k});
  }

  std::map<std::int64_t, std::size_t> attacker_br;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto k = defender_br[j];
    auto it = attacker_br.find(k);
    if (it == attacker_br.end()) {
      it = attacker_br.emplace(k, AttackerBestResponse(game, ThresholdRule::Deterministic(n, k)))
               .first;
    }
    if (it->second == j) scan.intersections.push_back({j, grid[j], k});
  }
  return scan;
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string SweepCsv(const std::vector<SweepRow>& rows, const RunConfig& config) {
  const bool np = IsNp(config);
  std::ostringstream os;
  os << "n,eq_error,exponent,attacker_support_min,attacker_support_max,attacker_mode,"
        "defender_k_min,defender_k_max,status,wall_ms";
  if (np) os << ",defender_pi";
  os << '\n';
  for (const auto& r : rows) {
    os << r.n << ',' << FormatDouble(r.eq_error) << ',' << FormatDouble(r.exponent) << ','
       << FormatDouble(r.attacker_support_min) << ',' << FormatDouble(r.attacker_support_max)
       << ',' << FormatDouble(r.attacker_mode) << ',' << r.defender_k_min << ','
       << r.defender_k_max << ',' << r.status << ','
       << FormatDouble(config.record_timing ? r.wall_ms : 0.0);
    if (np) os << ',' << FormatDouble(r.defender_pi);
    os << '\n';
  }
  return os.str();
}

std::string BestResponseCsv(const BestResponseScan& scan) {
  std::ostringstream os;
  os << "curve,q_index,q,k\n";
  for (const auto& p : scan.defender_curve) {
    os << "defender," << p.q_index << ',' << FormatDouble(p.q) << ',' << p.k << '\n';
  }
  for (const auto& p : scan.attacker_curve) {
    os << "attacker," << p.q_index << ',' << FormatDouble(p.q) << ',' << p.k << '\n';
  }
  for (const auto& p : scan.intersections) {
    os << "intersection," << p.q_index << ',' << FormatDouble(p.q) << ',' << p.k << '\n';
  }
  return os.str();
}

std::string ConfigJson(const RunConfig& c) {
  json j;
  j["experiment"] = std::string(ToString(c.kind));
  j["p1"] = c.p1;
  j["q_lo"] = c.q_lo;
  j["q_hi"] = c.q_hi;
  j["grid_size"] = c.grid_size;
  j["gamma"] = c.gamma;
  j["epsilon"] = c.epsilon;
  j["cost"] = c.cost_kind;
  j["cost_scale"] = c.cost_scale;
  j["q_star"] = c.q_star;
  j["cost_values"] = c.cost_values;
  j["n_values"] = c.n_values;
  j["threshold_window"] = c.threshold_window;
  j["exponent_mode"] = std::string(ToString(c.exponent_mode));
  if (c.p_dist) j["p"] = std::vector<double>(c.p_dist->probs().begin(), c.p_dist->probs().end());
  if (c.q_dist) j["q"] = std::vector<double>(c.q_dist->probs().begin(), c.q_dist->probs().end());
  j["jobs"] = c.jobs;
  j["lp_tol"] = c.lp_tol;
  LpOptions lp;
  j["lp_pivot_tol"] = lp.pivot_tol;
  j["lp_optimality_tol"] = lp.optimality_tol;
  j["lp_max_pivots"] = lp.max_pivots;
  j["support_threshold"] = kSupportThreshold;
  j["record_timing"] = c.record_timing;
  j["out_csv"] = c.out_csv;
  j["out_json"] = c.out_json;
  return j.dump();
}

std::string ManifestJson(const RunConfig& config, const std::vector<SweepRow>& rows) {
  json j = ManifestHeader(config);
  j["row_count"] = rows.size();
  json out = json::array();
  for (const auto& r : rows) out.push_back(RowJson(r, IsNp(config)));
  j["rows"] = std::move(out);
  return j.dump(2) + "\n";
}

std::string ManifestJson(const RunConfig& config, const BestResponseScan& scan) {
  json j = ManifestHeader(config);
  j["n"] = scan.n;
  j["q_star_threshold"] = scan.q_star_threshold;
  auto points = [](const std::vector<BestResponsePoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({{"q_index", p.q_index}, {"q", p.q}, {"k", p.k}});
    return arr;
  };
  j["defender_curve"] = points(scan.defender_curve);
  j["attacker_curve"] = points(scan.attacker_curve);
  j["intersections"] = points(scan.intersections);
  return j.dump(2) + "\n";
}

void EmitOutputs(const std::vector<OutputFile>& files) {
  std::vector<fs::path> temps;
  auto cleanup = [&] {
    for (const auto& t : temps) RemoveQuietly(t);
  };
  for (const auto& f : files) {
    const fs::path target(f.path);
    fs::path temp = target;
    temp += ".tmp." + std::to_string(::getpid());
    temps.push_back(temp);
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out << f.contents;
    out.close();
    if (!out) {
      cleanup();
      throw IoError("cannot write " + temp.string());
    }
  }
  std::vector<fs::path> done;
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    fs::rename(temps[i], files[i].path, ec);
    if (ec) {
      cleanup();
      for (const auto& d : done) RemoveQuietly(d);
      throw IoError("cannot move output into place: " + files[i].path + ": " + ec.message());
    }
    done.emplace_back(files[i].path);
  }
}

void EmitSweepOutputs(const std::vector<SweepRow>& rows, const RunConfig& config) {
  std::vector<OutputFile> files;
  if (!config.out_csv.empty()) files.push_back({config.out_csv, SweepCsv(rows, config)});
  if (!config.out_json.empty()) files.push_back({config.out_json, ManifestJson(config, rows)});
  EmitOutputs(files);
}

}  // namespace advhyp
