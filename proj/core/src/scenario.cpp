// Copyright 2026 The cogmarket Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cogmarket/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cogmarket {

namespace {

using nlohmann::json;

template <typename T>
const T& pick(const std::vector<T>& values, int index) {
  return values.size() == 1 ? values.front()
                            : values.at(static_cast<std::size_t>(index));
}

void require(bool condition, const std::string& message) {
  if (!condition) throw std::invalid_argument("invalid scenario: " + message);
}

template <typename T>
void check_broadcast_size(const std::vector<T>& values, int expected,
                          const char* field) {
  require(values.size() == 1 || values.size() == static_cast<std::size_t>(expected),
          std::string(field) + " must have 1 or " + std::to_string(expected) +
              " entries");
}

// Accepts a scalar (uniform) or an array.
template <typename T>
std::vector<T> scalar_or_array(const json& value, const char* field) {
  if (value.is_array()) {
    std::vector<T> out = value.get<std::vector<T>>();
    require(!out.empty(), std::string(field) + " must not be empty");
    return out;
  }
  require(value.is_number(), std::string(field) + " must be a number or array");
  return {value.get<T>()};
}

}  // namespace

int ScenarioConfig::quota(int k) const { return pick(quotas, k); }

std::vector<int> ScenarioConfig::quota_vector() const {
  std::vector<int> out(static_cast<std::size_t>(num_sus));
  for (int k = 0; k < num_sus; ++k) out[static_cast<std::size_t>(k)] = quota(k);
  return out;
}

double ScenarioConfig::su_power() const {
  return noise_power * std::pow(10.0, snr_db / 10.0);
}

double ScenarioConfig::primary_power_of(int l) const {
  return primary_power.empty() ? su_power() : pick(primary_power, l);
}

double ScenarioConfig::tx_prob_of(int l) const { return pick(tx_prob, l); }

double ScenarioConfig::qos_threshold(int l) const { return pick(qos_thresholds, l); }

double ScenarioConfig::initial_price() const {
  return epsilon.value_or(alpha / 2.0);
}

std::vector<double> ScenarioConfig::lambda_values() const {
  if (!lambda_grid.empty()) return lambda_grid;
  std::vector<double> grid(21);
  for (std::size_t i = 0; i < grid.size(); ++i)
    grid[i] = static_cast<double>(i) / 20.0;
  return grid;
}

void ScenarioConfig::validate() const {
  require(num_sus >= 1, "K must be >= 1");
  require(num_channels >= 1, "L must be >= 1");
  require(!quotas.empty(), "quotas must not be empty");
  check_broadcast_size(quotas, num_sus, "quotas");
  for (int q : quotas) require(q >= 1, "every quota must be >= 1");
  require(std::isfinite(snr_db), "snr_db must be finite");
  if (!primary_power.empty()) {
    check_broadcast_size(primary_power, num_channels, "primary_power");
    for (double p : primary_power)
      require(std::isfinite(p) && p >= 0.0, "primary_power must be >= 0");
  }
  require(std::isfinite(noise_power) && noise_power > 0.0,
          "noise_power must be > 0");
  require(n_samples >= 1, "n_samples must be >= 1");
  require(false_alarm_target > 0.0 && false_alarm_target < 1.0,
          "false_alarm_target must lie in (0, 1)");
  require(!tx_prob.empty(), "tx_prob must not be empty");
  check_broadcast_size(tx_prob, num_channels, "tx_prob");
  for (double t : tx_prob) require(t >= 0.0 && t <= 1.0, "tx_prob must lie in [0, 1]");
  require(lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0, 1]");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
  require(std::isfinite(initial_price()) && initial_price() > 0.0,
          "epsilon must be > 0");
  require(!qos_thresholds.empty(), "qos_thresholds must not be empty");
  check_broadcast_size(qos_thresholds, num_channels, "qos_thresholds");
  for (double u : qos_thresholds)
    require(std::isfinite(u) && u >= 0.0, "qos_thresholds must be >= 0");
  require(trials >= 1, "trials must be >= 1");
  for (double w : lambda_grid) require(w >= 0.0 && w <= 1.0, "lambda_grid entries must lie in [0, 1]");
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid scenario JSON: ") + e.what());
  }
  require(doc.is_object(), "top level must be an object");

  static const std::set<std::string> known = {
      "K",           "L",          "quotas",      "snr_db",
      "primary_power", "noise_power", "n_samples", "false_alarm_target",
      "tx_prob",     "lambda",     "alpha",       "epsilon",
      "qos_thresholds", "seed",    "trials",      "broadcast_on_change_only",
      "lambda_grid"};
  for (const auto& item : doc.items()) {
    require(known.count(item.key()) > 0, "unknown field '" + item.key() + "'");
  }

  ScenarioConfig c;
  try {
    if (doc.contains("K")) c.num_sus = doc["K"].get<int>();
    if (doc.contains("L")) c.num_channels = doc["L"].get<int>();
    if (doc.contains("quotas")) c.quotas = scalar_or_array<int>(doc["quotas"], "quotas");
    if (doc.contains("snr_db")) c.snr_db = doc["snr_db"].get<double>();
    if (doc.contains("primary_power") && !doc["primary_power"].is_null())
      c.primary_power = scalar_or_array<double>(doc["primary_power"], "primary_power");
    if (doc.contains("noise_power")) c.noise_power = doc["noise_power"].get<double>();
    if (doc.contains("n_samples")) c.n_samples = doc["n_samples"].get<int>();
    if (doc.contains("false_alarm_target"))
      c.false_alarm_target = doc["false_alarm_target"].get<double>();
    if (doc.contains("tx_prob")) c.tx_prob = scalar_or_array<double>(doc["tx_prob"], "tx_prob");
    if (doc.contains("lambda")) c.lambda = doc["lambda"].get<double>();
    if (doc.contains("alpha")) c.alpha = doc["alpha"].get<double>();
    if (doc.contains("epsilon") && !doc["epsilon"].is_null())
      c.epsilon = doc["epsilon"].get<double>();
    if (doc.contains("qos_thresholds"))
      c.qos_thresholds = scalar_or_array<double>(doc["qos_thresholds"], "qos_thresholds");
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("trials")) c.trials = doc["trials"].get<int>();
    if (doc.contains("broadcast_on_change_only"))
      c.broadcast_on_change_only = doc["broadcast_on_change_only"].get<bool>();
    if (doc.contains("lambda_grid"))
      c.lambda_grid = doc["lambda_grid"].get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid scenario: ") + e.what());
  }
  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json doc = {
      {"K", c.num_sus},
      {"L", c.num_channels},
      {"quotas", c.quotas},
      {"snr_db", c.snr_db},
      {"noise_power", c.noise_power},
      {"n_samples", c.n_samples},
      {"false_alarm_target", c.false_alarm_target},
      {"tx_prob", c.tx_prob},
      {"lambda", c.lambda},
      {"alpha", c.alpha},
      {"qos_thresholds", c.qos_thresholds},
      {"seed", c.seed},
      {"trials", c.trials},
      {"broadcast_on_change_only", c.broadcast_on_change_only},
  };
  doc["primary_power"] = c.primary_power.empty() ? json(nullptr) : json(c.primary_power);
  doc["epsilon"] = c.epsilon ? json(*c.epsilon) : json(nullptr);
  if (!c.lambda_grid.empty()) doc["lambda_grid"] = c.lambda_grid;
  return doc.dump(2);
}

}  // namespace cogmarket
