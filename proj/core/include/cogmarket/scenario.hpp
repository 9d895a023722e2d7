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

#ifndef COGMARKET_SCENARIO_HPP_
#define COGMARKET_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cogmarket {

// Parameters of one simulated cognitive radio cell plus the knobs of both
// assignment mechanisms.
//
// Per-SU and per-channel vectors hold either one entry (applied uniformly) or
// exactly num_sus / num_channels entries. The JSON field names are the short
// symbols used throughout the project: K, L, quotas, snr_db, primary_power,
// noise_power, n_samples, false_alarm_target, tx_prob, lambda, alpha,
// epsilon, qos_thresholds, seed, trials.
struct ScenarioConfig {
  int num_sus = 10;
  int num_channels = 20;
  std::vector<int> quotas{2};
  double snr_db = 0.0;
  // Linear PU transmit power per channel; empty means "same as the SU power".
  std::vector<double> primary_power{};
  double noise_power = 1.0;
  int n_samples = 20;
  double false_alarm_target = 0.05;
  std::vector<double> tx_prob{0.75};
  double lambda = 0.5;
  double alpha = 0.005;
  // Initial auction price; alpha / 2 when unset.
  std::optional<double> epsilon;
  std::vector<double> qos_thresholds{0.0};
  std::uint64_t seed = 1;
  int trials = 1000;
  // Count a demand broadcast only when an SU's demand set changed.
  bool broadcast_on_change_only = false;
  // Weights for the region boundary sweep; empty means 21 points on [0, 1].
  std::vector<double> lambda_grid{};

  int quota(int k) const;
  std::vector<int> quota_vector() const;
  double su_power() const;
  double primary_power_of(int l) const;
  double tx_prob_of(int l) const;
  double qos_threshold(int l) const;
  double initial_price() const;
  std::vector<double> lambda_values() const;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::string& path);
std::string scenario_to_json(const ScenarioConfig& config);

}  // namespace cogmarket

#endif  // COGMARKET_SCENARIO_HPP_
