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

#ifndef COGMARKET_CHANNEL_MODEL_HPP_
#define COGMARKET_CHANNEL_MODEL_HPP_

#include <cstdint>

#include "cogmarket/channel_set.hpp"
#include "cogmarket/matrix.hpp"
#include "cogmarket/scenario.hpp"

namespace cogmarket {

// Squared magnitudes of every link in one time slot. Rows are SUs, columns
// channels, except primary_gain which is per channel.
struct ChannelRealization {
  Matrix<double> direct_gain;          // SU tx k -> SU rx k on channel l
  std::vector<double> primary_gain;    // PU tx l -> PU rx l
  Matrix<double> pu_to_su_gain;        // PU tx l -> SU rx k
  Matrix<double> su_to_pu_gain;        // SU tx k -> PU rx l
  Matrix<double> sensing_gain;         // PU tx l -> SU tx k (sensing link)

  int num_sus() const { return static_cast<int>(direct_gain.rows()); }
  int num_channels() const { return static_cast<int>(direct_gain.cols()); }

  static ChannelRealization zeros(int num_sus, int num_channels);
  bool operator==(const ChannelRealization&) const = default;
};

// Energy detector operating point of SU k on channel l.
struct SensingProfile {
  Matrix<double> threshold;
  Matrix<double> false_alarm;
  Matrix<double> detection;
  Matrix<double> access;
};

struct UtilityTables {
  Matrix<double> u_su;              // [k][l], bits/s/Hz
  Matrix<double> u_pu;              // [l][k]
  std::vector<double> u_pu_free;    // PU utility with no SU on the channel
  std::vector<double> u_pu_self;    // self-matching value (QoS threshold)

  int num_sus() const { return static_cast<int>(u_su.rows()); }
  int num_channels() const { return static_cast<int>(u_su.cols()); }
  bool operator==(const UtilityTables&) const = default;
};

// Gaussian tail probability, 0.5 * erfc(x / sqrt(2)).
double q_function(double x);

// Inverse of q_function on (0, 1); throws std::domain_error otherwise.
double q_inverse(double p);

double detector_threshold(double false_alarm_target, int n_samples,
                          double noise_power);
double false_alarm_probability(double threshold, int n_samples,
                               double noise_power);
double detection_probability(double threshold, int n_samples,
                             double noise_power, double primary_power,
                             double sensing_gain);
double access_probability(double tx_prob, double false_alarm,
                          double detection);

SensingProfile compute_sensing(const ChannelRealization& realization,
                               const ScenarioConfig& config);

double su_rate(int k, int l, const ChannelRealization& realization,
               const SensingProfile& sensing, const ScenarioConfig& config);

// Sum of u_su[k][l] over the set; zero for the empty set.
double su_sum_rate(int k, const ChannelSet& channels,
                   const UtilityTables& tables);

// Rate-based PU utility with SU k active on channel l.
double pu_utility(int l, int k, const ChannelRealization& realization,
                  const SensingProfile& sensing, const ScenarioConfig& config);

// PU utility with nobody on channel l.
double pu_utility_free(int l, const ChannelRealization& realization,
                       const ScenarioConfig& config);

// Rayleigh block fading: every squared gain is Exp(1). Deterministic in
// (config.seed, trial_index).
ChannelRealization generate_realization(const ScenarioConfig& config,
                                        std::uint64_t trial_index);

UtilityTables build_utility_tables(const ChannelRealization& realization,
                                   const SensingProfile& sensing,
                                   const ScenarioConfig& config);
UtilityTables build_utility_tables(const ChannelRealization& realization,
                                   const ScenarioConfig& config);

}  // namespace cogmarket

#endif  // COGMARKET_CHANNEL_MODEL_HPP_
