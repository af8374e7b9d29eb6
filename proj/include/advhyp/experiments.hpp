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

#ifndef ADVHYP_EXPERIMENTS_HPP_
#define ADVHYP_EXPERIMENTS_HPP_

// Sweeps over n, best-response scans and their CSV / JSON outputs.

#include <cstdint>
#include <string>
#include <vector>

#include "advhyp/config.hpp"

namespace advhyp {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct SweepRow {
  std::int64_t n = 0;
  double eq_error = 0.0;
  double log_eq_error = 0.0;
  double exponent = 0.0;
  double attacker_support_min = 0.0;
  double attacker_support_max = 0.0;
  double attacker_mode = 0.0;  // grid point carrying the most weight
  std::int64_t defender_k_min = 0;
  std::int64_t defender_k_max = 0;
  double defender_pi = 0.0;  // boundary randomization (NP rows only)
  double deviation_gain = 0.0;
  std::string status = "ok";
  double wall_ms = 0.0;
};

// Bayesian equilibrium for every configured n, rows in ascending n. Sweep
// points run on `config.jobs` threads; failures are recorded per row.
std::vector<SweepRow> RunExponentSweep(const RunConfig& config);

// Dominant rule and attacker best response for every configured n.
std::vector<SweepRow> RunNpExperiment(const RunConfig& config);

struct BestResponsePoint {
  std::size_t q_index = 0;
  double q = 0.0;
  std::int64_t k = 0;
};

struct BestResponseScan {
  std::int64_t n = 0;
  // Defender's best threshold for every grid point.
  std::vector<BestResponsePoint> defender_curve;
  // Attacker's best grid point for each threshold in the window.
  std::vector<BestResponsePoint> attacker_curve;
  // Defender's best threshold against q* itself.
  std::int64_t q_star_threshold = 0;
  // Grid points where each curve is the other's best response.
  std::vector<BestResponsePoint> intersections;
};

// Window of `threshold_window` thresholds centred on the best response to q*.
BestResponseScan RunBestResponseScan(const RunConfig& config);

// Fills exponents from log errors according to the configured mode.
void AssignExponents(std::vector<SweepRow>& rows, ExponentMode mode);

// Shortest decimal string that round-trips to the same double.
std::string FormatDouble(double v);

std::string SweepCsv(const std::vector<SweepRow>& rows, const RunConfig& config);
std::string BestResponseCsv(const BestResponseScan& scan);

std::string ManifestJson(const RunConfig& config, const std::vector<SweepRow>& rows);
std::string ManifestJson(const RunConfig& config, const BestResponseScan& scan);
// Full resolved configuration, every default spelled out.
std::string ConfigJson(const RunConfig& config);

struct OutputFile {
  std::string path;
  std::string contents;
};

// Writes every file via temp file + rename. On failure no temp files remain
// and previously renamed outputs of this call are removed. Throws IoError.
void EmitOutputs(const std::vector<OutputFile>& files);

// Convenience: CSV and manifest to config.out_csv / config.out_json (each
// skipped when empty).
void EmitSweepOutputs(const std::vector<SweepRow>& rows, const RunConfig& config);

}  // namespace advhyp

#endif  // ADVHYP_EXPERIMENTS_HPP_
