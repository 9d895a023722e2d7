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

#include "cogmarket/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "cogmarket/channel_model.hpp"

namespace cogmarket {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    const double n = static_cast<double>(xs.size());
    s.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return s;
}

Matching matching_from_allocation(const std::vector<ChannelSet>& allocation,
                                  int num_channels) {
  Matching m = Matching::unmatched(static_cast<int>(allocation.size()), num_channels);
  for (std::size_t k = 0; k < allocation.size(); ++k)
    for (ChannelIndex l : allocation[k]) m.assign(static_cast<SuIndex>(k), l);
  return m;
}

}  // namespace

std::string_view mechanism_name(Mechanism m) {
  switch (m) {
    case Mechanism::kStableMatching: return "stable-matching";
    case Mechanism::kEnglishAuction: return "english-auction";
    case Mechanism::kHungarian: return "hungarian";
    case Mechanism::kRandom: return "random";
  }
  return "unknown";
}

Mechanism parse_mechanism(std::string_view name) {
  for (Mechanism m : all_mechanisms())
    if (mechanism_name(m) == name) return m;
  throw std::invalid_argument("unknown mechanism '" + std::string(name) + "'");
}

std::vector<Mechanism> parse_mechanism_list(std::string_view comma_separated) {
  std::vector<Mechanism> out;
  std::stringstream in{std::string(comma_separated)};
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const Mechanism m = parse_mechanism(item);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  if (out.empty()) throw std::invalid_argument("no mechanisms given");
  return out;
}

const std::vector<Mechanism>& all_mechanisms() {
  static const std::vector<Mechanism> kAll = {
      Mechanism::kStableMatching, Mechanism::kEnglishAuction,
      Mechanism::kHungarian, Mechanism::kRandom};
  return kAll;
}

TrialRecord score_matching(const Matching& matching, const UtilityTables& tables,
                           const Valuation& valuation, PuMetric metric) {
  TrialRecord r;
  for (SuIndex k = 0; k < matching.num_sus(); ++k)
    r.su_sum_rate += su_sum_rate(k, matching.channels_of[idx(k)], tables);
  for (ChannelIndex l = 0; l < matching.num_channels(); ++l) {
    const SuIndex k = matching.channel_of[idx(l)];
    if (k != kSelfMatched) {
      r.pu_sum_rate += tables.u_pu(idx(l), idx(k));
    } else {
      r.pu_sum_rate += metric == PuMetric::kInterferenceFree ? tables.u_pu_free[idx(l)]
                                                             : tables.u_pu_self[idx(l)];
    }
  }
  r.welfare = assignment_welfare(valuation, matching.channel_of);
  return r;
}

std::vector<TrialRecord> run_experiment(const ScenarioConfig& config,
                                        const std::vector<Mechanism>& mechanisms,
                                        const ExperimentOptions& options) {
  config.validate();
  if (mechanisms.empty()) throw std::invalid_argument("no mechanisms requested");
  const std::vector<int> quotas = config.quota_vector();
  const double num_sus = static_cast<double>(config.num_sus);

  std::vector<TrialRecord> records;
  records.reserve(static_cast<std::size_t>(config.trials) * mechanisms.size());
  for (int trial = 0; trial < config.trials; ++trial) {
    const auto trial_index = static_cast<std::uint64_t>(trial);
    const ChannelRealization realization = generate_realization(config, trial_index);
    const UtilityTables tables = build_utility_tables(realization, config);
    const Valuation valuation = make_valuation(tables, config.lambda, quotas);

    const std::size_t first = records.size();
    for (Mechanism mechanism : mechanisms) {
      TrialRecord record;
      TrialDetail detail;
      switch (mechanism) {
        case Mechanism::kStableMatching: {
          const StableMatchingResult sm = run_stable_matching(tables, quotas);
          if (!is_stable(sm.matching, tables, quotas))
            throw std::logic_error("stable matching output is not stable");
          record = score_matching(sm.matching, tables, valuation, options.pu_metric);
          long proposals = 0;
          for (int p : sm.log.proposals_per_su) proposals += p;
          record.proposals = static_cast<double>(proposals) / num_sus;
          record.bits = sm.log.bits_total;
          if (options.observer) {
            detail.matching = sm.matching;
            detail.log = &sm.log;
            detail.trial = trial;
            detail.mechanism = mechanism;
            options.observer(detail);
          }
          break;
        }
        case Mechanism::kEnglishAuction: {
          AuctionOptions auction_options;
          auction_options.alpha = config.alpha;
          auction_options.initial_price = config.initial_price();
          auction_options.broadcast_on_change_only = config.broadcast_on_change_only;
          auction_options.record_history = options.record_auction_history;
          const AuctionResult auction = run_english_auction(valuation, auction_options);
          const Matching m =
              matching_from_allocation(auction.outcome.allocation, config.num_channels);
          record = score_matching(m, tables, valuation, options.pu_metric);
          record.demands = static_cast<double>(auction.demand_messages) / num_sus;
          record.iterations = auction.iterations;
          record.bits = auction.demand_messages * config.num_channels;
          record.verified = verify_walrasian(auction.outcome, valuation,
                                             config.initial_price(),
                                             config.alpha * config.num_channels);
          if (options.observer) {
            detail.matching = m;
            detail.auction = &auction;
            detail.trial = trial;
            detail.mechanism = mechanism;
            options.observer(detail);
          }
          break;
        }
        case Mechanism::kHungarian: {
          const AssignmentResult h = hungarian_assign(valuation);
          record = score_matching(h.matching, tables, valuation, options.pu_metric);
          if (options.observer) {
            detail.matching = h.matching;
            detail.trial = trial;
            detail.mechanism = mechanism;
            options.observer(detail);
          }
          break;
        }
        case Mechanism::kRandom: {
          Rng rng(config.seed, trial_index, Stream::kRandomMatching);
          const Matching m = random_matching(quotas, config.num_channels, rng);
          record = score_matching(m, tables, valuation, options.pu_metric);
          if (options.observer) {
            detail.matching = m;
            detail.trial = trial;
            detail.mechanism = mechanism;
            options.observer(detail);
          }
          break;
        }
      }
      record.trial = trial;
      record.mechanism = mechanism;
      records.push_back(record);
    }

    // Every mechanism returns a feasible point of the weighted-sum program,
    // so none may beat its optimum.
    const auto hung = std::find_if(records.begin() + static_cast<std::ptrdiff_t>(first),
                                   records.end(), [](const TrialRecord& r) {
                                     return r.mechanism == Mechanism::kHungarian;
                                   });
    if (hung != records.end()) {
      const double slack = 1e-9 * std::max(1.0, hung->welfare);
      for (auto it = records.begin() + static_cast<std::ptrdiff_t>(first);
           it != records.end(); ++it) {
        if (it->welfare > hung->welfare + slack)
          throw std::logic_error("a mechanism exceeded the Hungarian optimum");
      }
    }
  }
  return records;
}

std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records,
                                    const std::vector<Mechanism>& mechanisms,
                                    std::string_view axis, double value) {
  std::map<int, double> optimum;
  for (const auto& r : records)
    if (r.mechanism == Mechanism::kHungarian) optimum[r.trial] = r.welfare;

  std::vector<AggregateRow> rows;
  for (Mechanism mechanism : mechanisms) {
    std::vector<double> su, pu, welfare, proposals, demands, iterations, bits, loss;
    int verified = 0;
    for (const auto& r : records) {
      if (r.mechanism != mechanism) continue;
      su.push_back(r.su_sum_rate);
      pu.push_back(r.pu_sum_rate);
      welfare.push_back(r.welfare);
      proposals.push_back(r.proposals);
      demands.push_back(r.demands);
      iterations.push_back(static_cast<double>(r.iterations));
      bits.push_back(static_cast<double>(r.bits));
      if (r.verified) ++verified;
      if (auto it = optimum.find(r.trial); it != optimum.end()) {
        loss.push_back(it->second > 0.0 ? (it->second - r.welfare) / it->second : 0.0);
      }
    }
    AggregateRow row;
    row.axis = std::string(axis);
    row.value = value;
    row.mechanism = mechanism;
    row.trials = static_cast<int>(su.size());
    row.su_sum_rate = summarize(su);
    row.pu_sum_rate = summarize(pu);
    row.welfare = summarize(welfare);
    row.proposals = summarize(proposals);
    row.demands = summarize(demands);
    row.iterations = summarize(iterations);
    row.bits = summarize(bits);
    if (!optimum.empty() && loss.size() == su.size()) row.welfare_loss = summarize(loss);
    row.verified_fraction =
        su.empty() ? 1.0 : static_cast<double>(verified) / static_cast<double>(su.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "snr_db") return SweepAxis::kSnrDb;
  if (name == "alpha") return SweepAxis::kAlpha;
  if (name == "K") return SweepAxis::kNumSus;
  if (name == "quota") return SweepAxis::kQuota;
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                              "' (expected snr_db, alpha, K or quota)");
}

std::string_view sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kSnrDb: return "snr_db";
    case SweepAxis::kAlpha: return "alpha";
    case SweepAxis::kNumSus: return "K";
    case SweepAxis::kQuota: return "quota";
  }
  return "unknown";
}

ScenarioConfig with_axis_value(const ScenarioConfig& config, SweepAxis axis,
                               double value, std::optional<double> channels_per_su) {
  ScenarioConfig out = config;
  auto as_count = [&](const char* what) {
    const double rounded = std::round(value);
    if (rounded != value || rounded < 1.0)
      throw std::invalid_argument(std::string(what) + " values must be positive integers");
    return static_cast<int>(rounded);
  };
  switch (axis) {
    case SweepAxis::kSnrDb:
      out.snr_db = value;
      break;
    case SweepAxis::kAlpha:
      out.alpha = value;
      break;
    case SweepAxis::kNumSus:
      if (out.quotas.size() != 1)
        throw std::invalid_argument("a K sweep needs a single uniform quota");
      out.num_sus = as_count("K");
      if (channels_per_su)
        out.num_channels = static_cast<int>(std::lround(*channels_per_su * out.num_sus));
      break;
    case SweepAxis::kQuota:
      out.quotas = {as_count("quota")};
      break;
  }
  out.validate();
  return out;
}

std::vector<AggregateRow> sweep(const ScenarioConfig& config, SweepAxis axis,
                                const std::vector<double>& values,
                                const std::vector<Mechanism>& mechanisms,
                                const ExperimentOptions& options,
                                std::optional<double> channels_per_su) {
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  std::vector<AggregateRow> rows;
  for (double value : values) {
    const ScenarioConfig point = with_axis_value(config, axis, value, channels_per_su);
    auto part = aggregate(run_experiment(point, mechanisms, options), mechanisms,
                          sweep_axis_name(axis), value);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

std::vector<RegionPoint> region_boundary(const ScenarioConfig& config) {
  config.validate();
  const std::vector<double> lambdas = config.lambda_values();
  const std::vector<int> quoted = config.quota_vector();
  const std::vector<int> unlimited(idx(config.num_sus), config.num_channels);

  std::vector<RegionPoint> points;
  for (const char* bound : {"quoted", "maximum"}) {
    for (double lambda : lambdas) points.push_back({bound, lambda, 0.0, 0.0});
  }
  for (int trial = 0; trial < config.trials; ++trial) {
    const UtilityTables tables = build_utility_tables(
        generate_realization(config, static_cast<std::uint64_t>(trial)), config);
    std::size_t i = 0;
    for (const auto* quotas : {&quoted, &unlimited}) {
      for (double lambda : lambdas) {
        const Valuation valuation = make_valuation(tables, lambda, *quotas);
        const Matching m = hungarian_assign(valuation).matching;
        for (ChannelIndex l = 0; l < m.num_channels(); ++l) {
          const SuIndex k = m.channel_of[idx(l)];
          if (k == kSelfMatched) continue;
          points[i].su_sum_rate += tables.u_su(idx(k), idx(l));
          points[i].pu_sum_rate += tables.u_pu(idx(l), idx(k));
        }
        ++i;
      }
    }
  }
  for (auto& p : points) {
    p.su_sum_rate /= config.trials;
    p.pu_sum_rate /= config.trials;
  }
  return points;
}

}  // namespace cogmarket
