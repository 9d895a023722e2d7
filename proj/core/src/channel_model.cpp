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

#include "cogmarket/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "cogmarket/rng.hpp"

namespace cogmarket {

namespace {

void check_index(int k, int l, int num_sus, int num_channels) {
  if (k < 0 || k >= num_sus || l < 0 || l >= num_channels) {
    throw std::out_of_range("index (k=" + std::to_string(k) +
                            ", l=" + std::to_string(l) + ") out of range");
  }
}

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

ChannelRealization ChannelRealization::zeros(int num_sus, int num_channels) {
  const auto k = static_cast<std::size_t>(num_sus);
  const auto l = static_cast<std::size_t>(num_channels);
  return ChannelRealization{Matrix<double>(k, l), std::vector<double>(l),
                            Matrix<double>(k, l), Matrix<double>(k, l),
                            Matrix<double>(k, l)};
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double q_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("q_inverse: probability must lie in (0, 1)");
  }
  // Q is strictly decreasing; the bracket holds every double p in (0, 1)
  // except values below Q(38) ~ 1e-316, which clamp to the edge.
  double lo = -38.5;
  double hi = 38.5;
  double x = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = q_function(x) - p;
    if (residual == 0.0) return x;
    if (residual > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double slope = -std_normal_pdf(x);
    double next = slope != 0.0 ? x - residual / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  return x;
}

double detector_threshold(double false_alarm_target, int n_samples,
                          double noise_power) {
  if (n_samples < 1) throw std::domain_error("n_samples must be >= 1");
  if (!(noise_power > 0.0)) throw std::domain_error("noise power must be > 0");
  const double n = static_cast<double>(n_samples);
  return noise_power *
         (std::sqrt(2.0 * n) * q_inverse(false_alarm_target) + n);
}

double false_alarm_probability(double threshold, int n_samples,
                               double noise_power) {
  if (!(noise_power > 0.0)) throw std::domain_error("noise power must be > 0");
  const double n = static_cast<double>(n_samples);
  return q_function((threshold - n * noise_power) /
                    (noise_power * std::sqrt(2.0 * n)));
}

double detection_probability(double threshold, int n_samples,
                             double noise_power, double primary_power,
                             double sensing_gain) {
  if (!(noise_power > 0.0)) throw std::domain_error("noise power must be > 0");
  const double n = static_cast<double>(n_samples);
  const double received = primary_power * sensing_gain;
  const double spread =
      std::sqrt(2.0 * n * noise_power * (noise_power + 2.0 * received));
  return q_function((threshold - n * (noise_power + received)) / spread);
}

double access_probability(double tx_prob, double false_alarm,
                          double detection) {
  const double theta =
      (1.0 - tx_prob) * (1.0 - false_alarm) + tx_prob * (1.0 - detection);
  return std::clamp(theta, 0.0, 1.0);
}

SensingProfile compute_sensing(const ChannelRealization& realization,
                               const ScenarioConfig& config) {
  const auto num_sus = static_cast<std::size_t>(realization.num_sus());
  const auto num_channels = static_cast<std::size_t>(realization.num_channels());
  SensingProfile out{Matrix<double>(num_sus, num_channels),
                     Matrix<double>(num_sus, num_channels),
                     Matrix<double>(num_sus, num_channels),
                     Matrix<double>(num_sus, num_channels)};
  // The threshold depends only on the target and noise, so it is shared.
  const double gamma = detector_threshold(config.false_alarm_target,
                                          config.n_samples, config.noise_power);
  const double f =
      false_alarm_probability(gamma, config.n_samples, config.noise_power);
  for (std::size_t k = 0; k < num_sus; ++k) {
    for (std::size_t l = 0; l < num_channels; ++l) {
      const int li = static_cast<int>(l);
      const double d = detection_probability(
          gamma, config.n_samples, config.noise_power,
          config.primary_power_of(li), realization.sensing_gain(k, l));
      out.threshold(k, l) = gamma;
      out.false_alarm(k, l) = f;
      out.detection(k, l) = d;
      out.access(k, l) = access_probability(config.tx_prob_of(li), f, d);
    }
  }
  return out;
}

double su_rate(int k, int l, const ChannelRealization& realization,
               const SensingProfile& sensing, const ScenarioConfig& config) {
  check_index(k, l, realization.num_sus(), realization.num_channels());
  const auto ku = static_cast<std::size_t>(k);
  const auto lu = static_cast<std::size_t>(l);
  const double tx = config.tx_prob_of(l);
  const double noise = config.noise_power;
  const double signal = config.su_power() * realization.direct_gain(ku, lu);
  const double pu_interference =
      config.primary_power_of(l) * realization.pu_to_su_gain(ku, lu);
  const double idle_rate = std::log2(1.0 + signal / noise);
  const double busy_rate = std::log2(1.0 + signal / (noise + pu_interference));
  return (1.0 - tx) * (1.0 - sensing.false_alarm(ku, lu)) * idle_rate +
         tx * (1.0 - sensing.detection(ku, lu)) * busy_rate;
}

double su_sum_rate(int k, const ChannelSet& channels,
                   const UtilityTables& tables) {
  double total = 0.0;
  for (ChannelIndex l : channels) {
    check_index(k, l, tables.num_sus(), tables.num_channels());
    total += tables.u_su(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
  }
  return total;
}

double pu_utility_free(int l, const ChannelRealization& realization,
                       const ScenarioConfig& config) {
  check_index(0, l, 1, realization.num_channels());
  const double snr = config.primary_power_of(l) *
                     realization.primary_gain[static_cast<std::size_t>(l)] /
                     config.noise_power;
  return config.tx_prob_of(l) * std::log2(1.0 + snr);
}

double pu_utility(int l, int k, const ChannelRealization& realization,
                  const SensingProfile& sensing, const ScenarioConfig& config) {
  check_index(k, l, realization.num_sus(), realization.num_channels());
  const auto ku = static_cast<std::size_t>(k);
  const auto lu = static_cast<std::size_t>(l);
  const double noise = config.noise_power;
  const double signal = config.primary_power_of(l) * realization.primary_gain[lu];
  const double su_interference =
      config.su_power() * realization.su_to_pu_gain(ku, lu);
  const double d = sensing.detection(ku, lu);
  const double clean = std::log2(1.0 + signal / noise);
  const double jammed = std::log2(1.0 + signal / (noise + su_interference));
  const double value = config.tx_prob_of(l) * (d * clean + (1.0 - d) * jammed);
  // Mathematically bounded by the interference-free utility; the min removes
  // a possible last-ulp excess when jammed == clean.
  return std::min(value, pu_utility_free(l, realization, config));
}

ChannelRealization generate_realization(const ScenarioConfig& config,
                                        std::uint64_t trial_index) {
  auto out = ChannelRealization::zeros(config.num_sus, config.num_channels);
  Rng rng(config.seed, trial_index, Stream::kChannel);
  const auto num_sus = static_cast<std::size_t>(config.num_sus);
  const auto num_channels = static_cast<std::size_t>(config.num_channels);
  auto fill = [&](Matrix<double>& m) {
    for (std::size_t k = 0; k < num_sus; ++k)
      for (std::size_t l = 0; l < num_channels; ++l) m(k, l) = rng.exponential();
  };
  fill(out.direct_gain);
  for (auto& g : out.primary_gain) g = rng.exponential();
  fill(out.pu_to_su_gain);
  fill(out.su_to_pu_gain);
  fill(out.sensing_gain);
  return out;
}

UtilityTables build_utility_tables(const ChannelRealization& realization,
                                   const SensingProfile& sensing,
                                   const ScenarioConfig& config) {
  const int num_sus = realization.num_sus();
  const int num_channels = realization.num_channels();
  const auto ks = static_cast<std::size_t>(num_sus);
  const auto ls = static_cast<std::size_t>(num_channels);
  UtilityTables tables{Matrix<double>(ks, ls), Matrix<double>(ls, ks),
                       std::vector<double>(ls), std::vector<double>(ls)};
  for (int l = 0; l < num_channels; ++l) {
    const auto lu = static_cast<std::size_t>(l);
    tables.u_pu_free[lu] = pu_utility_free(l, realization, config);
    // A threshold above the interference-free value is unreachable anyway;
    // clamping keeps u_pu_self <= u_pu_free.
    tables.u_pu_self[lu] = std::min(config.qos_threshold(l), tables.u_pu_free[lu]);
    for (int k = 0; k < num_sus; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      tables.u_su(ku, lu) = su_rate(k, l, realization, sensing, config);
      tables.u_pu(lu, ku) = pu_utility(l, k, realization, sensing, config);
    }
  }
  return tables;
}

UtilityTables build_utility_tables(const ChannelRealization& realization,
                                   const ScenarioConfig& config) {
  return build_utility_tables(realization, compute_sensing(realization, config),
                              config);
}

}  // namespace cogmarket
