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

// Experiment runner for adversarial hypothesis-testing games.
//
//   advhyp sweep-bayes --config near_abs.cfg --out-csv near_abs.csv --jobs 4
//   advhyp best-response --q-lo 0.7 --q-hi 0.9 --q-star 0.8 --n 200
//   advhyp chernoff --p1 0.5 --q-star 0.8
//
// Exit codes: 0 success, 2 config/validation error, 3 solver failure,
// 4 I/O error.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "advhyp/asymptotics.hpp"
#include "advhyp/config.hpp"
#include "advhyp/error.hpp"
#include "advhyp/experiments.hpp"
#include "json.hpp"

namespace {

using advhyp::ExperimentKind;
using json = nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

struct Subcommand {
  ExperimentKind kind;
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> flags;
};

advhyp::ConfigMap CollectFlags(const Subcommand& sub) {
  advhyp::ConfigMap out;
  for (const auto& [key, value] : sub.flags) {
    if (sub.app->count("--" + key) > 0) out[key] = value;
  }
  return out;
}

void WriteJsonResult(const json& result, const advhyp::RunConfig& config) {
  const std::string text = result.dump(2) + "\n";
  std::cout << text;
  if (!config.out_json.empty()) advhyp::EmitOutputs({{config.out_json, text}});
}

int RunSweep(const advhyp::RunConfig& config) {
  const auto rows = config.kind == ExperimentKind::kExponentSweepBayes
                        ? advhyp::RunExponentSweep(config)
                        : advhyp::RunNpExperiment(config);
  if (config.out_csv.empty()) std::cout << advhyp::SweepCsv(rows, config);
  advhyp::EmitSweepOutputs(rows, config);
  for (const auto& row : rows) {
    if (row.status != "ok") {
      std::cerr << "n = " << row.n << ": " << row.status << "\n";
      return kExitSolver;
    }
  }
  return 0;
}

int RunBestResponse(const advhyp::RunConfig& config) {
  const auto scan = advhyp::RunBestResponseScan(config);
  std::vector<advhyp::OutputFile> files;
  if (!config.out_csv.empty()) files.push_back({config.out_csv, advhyp::BestResponseCsv(scan)});
  if (!config.out_json.empty()) {
    files.push_back({config.out_json, advhyp::ManifestJson(config, scan)});
  }
  advhyp::EmitOutputs(files);
  std::cout << "n = " << scan.n << ", best threshold against q* = " << scan.q_star_threshold
            << "\n";
  if (scan.intersections.empty()) {
    std::cout << "best-response curves do not intersect on the grid\n";
  }
  for (const auto& p : scan.intersections) {
    std::cout << "intersection: q = " << advhyp::FormatDouble(p.q) << " (index " << p.q_index
              << "), k = " << p.k << "\n";
  }
  if (config.out_csv.empty()) std::cout << advhyp::BestResponseCsv(scan);
  return 0;
}

int RunCheck(const advhyp::RunConfig& config) {
  const auto report = advhyp::CheckAssumptions(config.p1, config.q_lo, config.q_hi,
                                               config.grid_size, config.Cost());
  json j;
  j["a1_holds"] = report.a1_holds;
  j["a2_holds"] = report.a2_holds;
  j["a3_holds"] = report.a3_holds;
  j["a4_holds"] = report.a4_holds;
  j["q_star"] = report.q_star;
  j["a4_balance_point"] = report.a4_balance_point;
  j["notes"] = report.notes;
  j["config"] = json::parse(advhyp::ConfigJson(config));
  WriteJsonResult(j, config);
  return 0;
}

int RunExponent(const advhyp::RunConfig& config) {
  const auto p = config.P();
  const auto q = config.Q();
  json j;
  if (config.kind == ExperimentKind::kChernoff) {
    j["chernoff_exponent"] = advhyp::ChernoffExponent(p, q);
    if (p.size() == 2) {
      const auto nu = advhyp::BalancePoint(p, q);
      j["balance_point"] = nu[1];
      j["kl_balance_to_p"] = advhyp::KlDivergence(nu, p);
    }
  } else {
    j["stein_exponent"] = advhyp::SteinExponent(p, q);
  }
  j["config"] = json::parse(advhyp::ConfigJson(config));
  WriteJsonResult(j, config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria and error exponents of adversarial hypothesis-testing games"};
  app.require_subcommand(1);

  struct Command {
    std::string name;
    ExperimentKind kind;
    std::string help;
  };
  const std::vector<Command> commands = {
      {"sweep-bayes", ExperimentKind::kExponentSweepBayes, "Bayesian equilibrium exponent per n"},
      {"sweep-np", ExperimentKind::kExponentSweepNp, "Neyman-Pearson equilibrium exponent per n"},
      {"best-response", ExperimentKind::kBestResponseScan, "Best-response curves at one n"},
      {"np-eq", ExperimentKind::kNpEquilibrium, "Neyman-Pearson equilibrium at one n"},
      {"check", ExperimentKind::kCheck, "Report which modelling assumptions hold"},
      {"chernoff", ExperimentKind::kChernoff, "Chernoff exponent and balance point of (p, q)"},
      {"stein", ExperimentKind::kStein, "Relative entropy D(p||q)"},
  };
  std::vector<Subcommand> subs(commands.size());
  for (std::size_t i = 0; i < commands.size(); ++i) {
    auto& sub = subs[i];
    sub.kind = commands[i].kind;
    sub.app = app.add_subcommand(commands[i].name, commands[i].help);
    sub.app->add_option("--config", sub.config_path, "key = value config file");
    for (const auto& key : advhyp::KnownConfigKeys()) {
      sub.app->add_option("--" + key, sub.flags[key], "overrides '" + key + "' from --config");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  for (const auto& sub : subs) {
    if (!sub.app->parsed()) continue;
    try {
      advhyp::ConfigMap values;
      if (!sub.config_path.empty()) values = advhyp::ParseConfigFile(sub.config_path);
      values = advhyp::MergeConfig(std::move(values), CollectFlags(sub));
      const auto config = advhyp::ResolveRunConfig(sub.kind, values);
      switch (sub.kind) {
        case ExperimentKind::kExponentSweepBayes:
        case ExperimentKind::kExponentSweepNp:
        case ExperimentKind::kNpEquilibrium:
          return RunSweep(config);
        case ExperimentKind::kBestResponseScan:
          return RunBestResponse(config);
        case ExperimentKind::kCheck:
          return RunCheck(config);
        case ExperimentKind::kChernoff:
        case ExperimentKind::kStein:
          return RunExponent(config);
      }
    } catch (const advhyp::InvalidArgument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitConfig;
    } catch (const advhyp::SolverError& e) {
      std::cerr << "solver failure: " << e.what() << " (certificate " << e.certificate()
                << ")\n";
      return kExitSolver;
    } catch (const advhyp::IoError& e) {
      std::cerr << "I/O error: " << e.what() << "\n";
      return kExitIo;
    }
  }
  return 0;
}
