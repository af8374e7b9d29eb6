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

#include "advhyp/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "advhyp/error.hpp"

namespace advhyp {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double ParseDouble(std::string_view key, std::string_view text) {
  text = Trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("config key '" + std::string(key) + "': not a number: '" +
                          std::string(text) + "'");
  }
  return v;
}

std::int64_t ParseInt(std::string_view key, std::string_view text) {
  text = Trim(text);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InvalidArgument("config key '" + std::string(key) + "': not an integer: '" +
                          std::string(text) + "'");
  }
  return v;
}

bool ParseBool(std::string_view key, std::string_view text) {
  std::string t(Trim(text));
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "1" || t == "true" || t == "yes" || t == "on") return true;
  if (t == "0" || t == "false" || t == "no" || t == "off") return false;
  throw InvalidArgument("config key '" + std::string(key) + "': not a boolean: '" + t + "'");
}

std::vector<double> ParseDoubleList(std::string_view key, std::string_view text) {
  std::vector<double> out;
  for (auto part : Split(text, ',')) out.push_back(ParseDouble(key, part));
  return out;
}

class Reader {
 public:
  explicit Reader(const ConfigMap& values) : values_(values) {}

  const std::string* Find(const std::string& key) const {
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }
  double Double(const std::string& key, double fallback) const {
    const auto* v = Find(key);
    return v ? ParseDouble(key, *v) : fallback;
  }
  double RequiredDouble(const std::string& key) const {
    const auto* v = Find(key);
    if (!v) throw InvalidArgument("missing required config key '" + key + "'");
    return ParseDouble(key, *v);
  }
  std::int64_t Int(const std::string& key, std::int64_t fallback) const {
    const auto* v = Find(key);
    return v ? ParseInt(key, *v) : fallback;
  }
  std::string String(const std::string& key, std::string fallback) const {
    const auto* v = Find(key);
    return v ? std::string(Trim(*v)) : fallback;
  }

 private:
  const ConfigMap& values_;
};

bool IsGameKind(ExperimentKind kind) {
  return kind != ExperimentKind::kChernoff && kind != ExperimentKind::kStein;
}

}  // namespace

std::string_view ToString(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kExponentSweepBayes: return "exponent_sweep_bayes";
    case ExperimentKind::kExponentSweepNp: return "exponent_sweep_np";
    case ExperimentKind::kBestResponseScan: return "best_response_scan";
    case ExperimentKind::kNpEquilibrium: return "np_equilibrium";
    case ExperimentKind::kCheck: return "check";
    case ExperimentKind::kChernoff: return "chernoff";
    case ExperimentKind::kStein: return "stein";
  }
  return "unknown";
}

std::string_view ToString(ExponentMode mode) {
  return mode == ExponentMode::kPointwise ? "pointwise" : "slope";
}

std::string NormalizeKey(std::string_view key) {
  std::string out(Trim(key));
  while (!out.empty() && out.front() == '-') out.erase(out.begin());
  for (char& c : out) {
    c = c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

const std::vector<std::string>& KnownConfigKeys() {
  static const std::vector<std::string> keys = {
      "p1",         "q-lo",          "q-hi",       "grid-size",        "gamma",
      "epsilon",    "cost",          "cost-scale", "q-star",           "cost-values",
      "n",          "n-values",      "n-range",    "threshold-window", "exponent-mode",
      "p",          "q",             "out-csv",    "out-json",         "jobs",
      "lp-tol",     "record-timing",
  };
  return keys;
}

ConfigMap ParseConfigText(std::string_view text) {
  ConfigMap out;
  const auto& known = KnownConfigKeys();
  int line_no = 0;
  for (auto line : Split(text, '\n')) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = NormalizeKey(line.substr(0, eq));
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": unknown key '" + key +
                            "'");
    }
    if (out.count(key)) {
      throw InvalidArgument("config line " + std::to_string(line_no) + ": duplicate key '" +
                            key + "'");
    }
    out[key] = std::string(Trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigMap ParseConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfigText(buf.str());
}

ConfigMap MergeConfig(ConfigMap base, const ConfigMap& overrides) {
  for (const auto& [k, v] : overrides) base[NormalizeKey(k)] = v;
  return base;
}

std::vector<std::int64_t> ParseNValues(std::string_view text) {
  text = Trim(text);
  std::vector<std::int64_t> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = Split(text, ':');
    if (parts.size() != 3) throw InvalidArgument("n-range must be start:stop:step");
    const auto start = ParseInt("n-range", parts[0]);
    const auto stop = ParseInt("n-range", parts[1]);
    const auto step = ParseInt("n-range", parts[2]);
    if (step < 1) throw InvalidArgument("n-range step must be >= 1");
    for (auto n = start; n <= stop; n += step) out.push_back(n);
  } else {
    for (auto part : Split(text, ',')) out.push_back(ParseInt("n-values", part));
  }
  return out;
}

CostFunction RunConfig::Cost() const {
  if (cost_kind == "abs") return CostFunction::ScaledAbsolute(cost_scale, q_star);
  if (cost_kind == "quad") return CostFunction::ScaledQuadratic(cost_scale, q_star);
  if (cost_kind == "table") return CostFunction::Tabulated(cost_values);
  throw InvalidArgument("cost must be one of abs, quad, table");
}

BayesGameSpec RunConfig::BayesSpec(std::int64_t n) const {
  return BayesGameSpec{p1, q_lo, q_hi, grid_size, gamma, n, Cost()};
}

NPGameSpec RunConfig::NpSpec(std::int64_t n) const {
  return NPGameSpec{p1, q_lo, q_hi, grid_size, epsilon, n, Cost()};
}

Distribution RunConfig::P() const { return p_dist ? *p_dist : Distribution::Binary(p1); }
Distribution RunConfig::Q() const { return q_dist ? *q_dist : Distribution::Binary(q_star); }

RunConfig ResolveRunConfig(ExperimentKind kind, const ConfigMap& raw) {
  ConfigMap values;
  for (const auto& [k, v] : raw) values[NormalizeKey(k)] = v;
  const auto& known = KnownConfigKeys();
  for (const auto& [k, v] : values) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw InvalidArgument("unknown config key '" + k + "'");
    }
  }
  Reader r(values);
  RunConfig c;
  c.kind = kind;
  c.p1 = r.Double("p1", c.p1);
  c.gamma = r.Double("gamma", c.gamma);
  c.epsilon = r.Double("epsilon", c.epsilon);
  c.grid_size = static_cast<int>(r.Int("grid-size", c.grid_size));
  c.cost_kind = r.String("cost", c.cost_kind);
  c.cost_scale = r.Double("cost-scale", c.cost_scale);
  c.threshold_window = static_cast<int>(r.Int("threshold-window", c.threshold_window));
  c.jobs = static_cast<int>(r.Int("jobs", c.jobs));
  c.lp_tol = r.Double("lp-tol", c.lp_tol);
  c.out_csv = r.String("out-csv", "");
  c.out_json = r.String("out-json", "");
  if (const auto* v = r.Find("record-timing")) c.record_timing = ParseBool("record-timing", *v);
  if (const auto* v = r.Find("cost-values")) c.cost_values = ParseDoubleList("cost-values", *v);

  const std::string mode = r.String("exponent-mode", "pointwise");
  if (mode == "pointwise") {
    c.exponent_mode = ExponentMode::kPointwise;
  } else if (mode == "slope") {
    c.exponent_mode = ExponentMode::kSlope;
  } else {
    throw InvalidArgument("exponent-mode must be pointwise or slope");
  }
  if (c.jobs < 1) throw InvalidArgument("jobs must be >= 1");
  if (!(c.lp_tol > 0.0)) throw InvalidArgument("lp-tol must be > 0");

  if (const auto* v = r.Find("p")) c.p_dist = Distribution(ParseDoubleList("p", *v));
  if (const auto* v = r.Find("q")) c.q_dist = Distribution(ParseDoubleList("q", *v));

  if (!IsGameKind(kind)) {
    if (!c.q_dist) c.q_star = r.RequiredDouble("q-star");
    if (c.P().size() != c.Q().size()) throw InvalidArgument("p and q have different sizes");
    return c;
  }

  c.q_lo = r.RequiredDouble("q-lo");
  c.q_hi = r.RequiredDouble("q-hi");
  if (c.cost_kind != "table") {
    c.q_star = r.RequiredDouble("q-star");
  } else {
    c.q_star = r.Double("q-star", 0.0);
  }

  const bool has_n = r.Find("n") != nullptr;
  const bool has_values = r.Find("n-values") != nullptr;
  const bool has_range = r.Find("n-range") != nullptr;
  if (kind == ExperimentKind::kCheck && !has_n && !has_values && !has_range) {
    AttackerGrid(c.q_lo, c.q_hi, c.grid_size);
    c.Cost();
    return c;
  }
  if (int(has_n) + int(has_values) + int(has_range) != 1) {
    throw InvalidArgument("give exactly one of n, n-values, n-range");
  }
  if (has_n) c.n_values = {r.Int("n", 1)};
  if (has_values) c.n_values = ParseNValues(*r.Find("n-values"));
  if (has_range) c.n_values = ParseNValues(*r.Find("n-range"));
  if (c.n_values.empty()) throw InvalidArgument("n values are empty");
  for (std::size_t i = 0; i < c.n_values.size(); ++i) {
    if (c.n_values[i] < 1) throw InvalidArgument("n values must be >= 1");
    if (i > 0 && c.n_values[i] <= c.n_values[i - 1]) {
      throw InvalidArgument("n values must be strictly increasing");
    }
  }
  if ((kind == ExperimentKind::kBestResponseScan || kind == ExperimentKind::kNpEquilibrium) &&
      c.n_values.size() != 1) {
    throw InvalidArgument(std::string(ToString(kind)) + " takes a single n");
  }
  if (c.threshold_window < 1) throw InvalidArgument("threshold-window must be >= 1");

  // Surface spec errors now rather than per sweep point.
  for (auto n : {c.n_values.front(), c.n_values.back()}) {
    if (kind == ExperimentKind::kExponentSweepNp || kind == ExperimentKind::kNpEquilibrium) {
      NPGame game(c.NpSpec(n));
    } else if (kind != ExperimentKind::kCheck) {
      BayesGame game(c.BayesSpec(n));
    }
  }
  if (kind == ExperimentKind::kCheck) {
    AttackerGrid(c.q_lo, c.q_hi, c.grid_size);
    c.Cost();
  }
  return c;
}

}  // namespace advhyp
