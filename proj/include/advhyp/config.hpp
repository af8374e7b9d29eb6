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

#ifndef ADVHYP_CONFIG_HPP_
#define ADVHYP_CONFIG_HPP_

// Run configuration: flat `key = value` files with `#` comments, overridable
// key-by-key from the command line.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advhyp/games.hpp"
#include "advhyp/prob.hpp"

namespace advhyp {

enum class ExperimentKind {
  kExponentSweepBayes,
  kExponentSweepNp,
  kBestResponseScan,
  kNpEquilibrium,
  kCheck,
  kChernoff,
  kStein,
};

enum class ExponentMode { kPointwise, kSlope };

std::string_view ToString(ExperimentKind kind);
std::string_view ToString(ExponentMode mode);

// Keys are normalized to lower case with '-' separators, so `grid_size` and
// `grid-size` name the same setting.
using ConfigMap = std::map<std::string, std::string>;

std::string NormalizeKey(std::string_view key);

// Every key accepted in a config file or as a `--key` flag.
const std::vector<std::string>& KnownConfigKeys();

ConfigMap ParseConfigText(std::string_view text);
ConfigMap ParseConfigFile(const std::filesystem::path& path);

// Entries of `overrides` replace those of `base`.
ConfigMap MergeConfig(ConfigMap base, const ConfigMap& overrides);

struct RunConfig {
  ExperimentKind kind = ExperimentKind::kExponentSweepBayes;

  double p1 = 0.5;
  double q_lo = 0.0;
  double q_hi = 0.0;
  int grid_size = kDefaultGridSize;
  double gamma = 1.0;
  double epsilon = 0.1;

  std::string cost_kind = "abs";  // abs | quad | table
  double cost_scale = 1.0;
  double q_star = 0.0;
  std::vector<double> cost_values;

  std::vector<std::int64_t> n_values;
  int threshold_window = 20;
  ExponentMode exponent_mode = ExponentMode::kPointwise;

  // Explicit distributions for chernoff/stein; binary (p1, q_star) otherwise.
  std::optional<Distribution> p_dist;
  std::optional<Distribution> q_dist;

  std::string out_csv;
  std::string out_json;
  int jobs = 1;
  double lp_tol = 1e-9;
  bool record_timing = false;

  CostFunction Cost() const;
  BayesGameSpec BayesSpec(std::int64_t n) const;
  NPGameSpec NpSpec(std::int64_t n) const;
  Distribution P() const;
  Distribution Q() const;
};

// Validates and fills defaults. Throws InvalidArgument naming the offending key.
RunConfig ResolveRunConfig(ExperimentKind kind, const ConfigMap& values);

// "10,20,30" or "start:stop:step" (inclusive of stop when it is hit).
std::vector<std::int64_t> ParseNValues(std::string_view text);

}  // namespace advhyp

#endif  // ADVHYP_CONFIG_HPP_
