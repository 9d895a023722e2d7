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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <stdexcept>

#include "cogmarket/channel_model.hpp"
#include "cogmarket/experiment.hpp"
#include "fixtures.hpp"

namespace cogmarket {
namespace {

ScenarioConfig small(int trials, std::uint64_t seed = 41) {
  ScenarioConfig c = fixture::scenario(5, 8, 2, seed);
  c.trials = trials;
  return c;
}

TEST(Mechanisms, NamesRoundTrip) {
  for (Mechanism m : all_mechanisms()) EXPECT_EQ(parse_mechanism(mechanism_name(m)), m);
  EXPECT_EQ(parse_mechanism_list("hungarian,random,hungarian"),
            (std::vector<Mechanism>{Mechanism::kHungarian, Mechanism::kRandom}));
  EXPECT_THROW(parse_mechanism("greedy"), std::invalid_argument);
  EXPECT_THROW(parse_mechanism_list(""), std::invalid_argument);
}

TEST(Experiment, OneTrialOneMechanism) {
  const auto records = run_experiment(small(1), {Mechanism::kHungarian});
  ASSERT_EQ(records.size(), 1U);
  EXPECT_EQ(records[0].trial, 0);
  EXPECT_EQ(records[0].iterations, 0);
}

TEST(Experiment, DeterministicAndTrialMajor) {
  const auto a = run_experiment(small(12), all_mechanisms());
  const auto b = run_experiment(small(12), all_mechanisms());
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 12U * 4U);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].trial, static_cast<int>(i / 4));
    EXPECT_EQ(a[i].mechanism, all_mechanisms()[i % 4]);
  }
  EXPECT_NE(run_experiment(small(12, 42), all_mechanisms()), a);
}

TEST(Experiment, SubsetOfMechanismsSeesSameTables) {
  const auto all = run_experiment(small(6), all_mechanisms());
  const auto only = run_experiment(small(6), {Mechanism::kEnglishAuction});
  for (std::size_t t = 0; t < 6; ++t) EXPECT_EQ(only[t], all[t * 4 + 1]);
}

TEST(Experiment, RecordInvariants) {
  ScenarioConfig c = small(40);
  c.quotas = {1, 2, 3, 1, 2};
  const auto records = run_experiment(c, all_mechanisms());
  std::map<int, double> optimum;
  for (const auto& r : records)
    if (r.mechanism == Mechanism::kHungarian) optimum[r.trial] = r.welfare;
  for (const auto& r : records) {
    for (double x : {r.su_sum_rate, r.pu_sum_rate, r.welfare, r.proposals, r.demands}) {
      EXPECT_TRUE(std::isfinite(x));
      EXPECT_GE(x, 0.0);
    }
    EXPECT_GE(r.iterations, 0);
    EXPECT_GE(r.bits, 0);
    EXPECT_LE(r.welfare, optimum[r.trial] * (1 + 1e-12));
    if (r.mechanism == Mechanism::kStableMatching) {
      EXPECT_TRUE(r.verified);
      EXPECT_LE(r.bits, 5 * worst_case_bits(8));
    }
    if (r.mechanism != Mechanism::kEnglishAuction) EXPECT_EQ(r.iterations, 0);
  }
}

TEST(Experiment, ScoresAgainstInterferenceFreeReference) {
  const ScenarioConfig c = small(30);
  const auto records = run_experiment(c, {Mechanism::kStableMatching, Mechanism::kHungarian});
  for (const auto& r : records) {
    const auto tables = build_utility_tables(generate_realization(c, static_cast<std::uint64_t>(r.trial)), c);
    double free = 0.0;
    for (double u : tables.u_pu_free) free += u;
    EXPECT_LE(r.pu_sum_rate, free + 1e-12);
  }
}

TEST(Experiment, PuMetricSelfCountsOnlyAssignedChannels) {
  const ScenarioConfig c = small(5);
  ExperimentOptions options;
  options.pu_metric = PuMetric::kSelfMatched;
  std::vector<Matching> matchings;
  options.observer = [&](const TrialDetail& d) { matchings.push_back(d.matching); };
  const auto records = run_experiment(c, {Mechanism::kStableMatching}, options);
  ASSERT_EQ(matchings.size(), 5U);
  for (std::size_t t = 0; t < 5; ++t) {
    const auto tables = build_utility_tables(generate_realization(c, t), c);
    double expected = 0.0;
    for (std::size_t l = 0; l < 8; ++l) {
      const int k = matchings[t].channel_of[l];
      expected += k >= 0 ? tables.u_pu(l, static_cast<std::size_t>(k)) : 0.0;
    }
    EXPECT_NEAR(records[t].pu_sum_rate, expected, 1e-12);
  }
}

TEST(Experiment, ObserverSeesLogsAndTraces) {
  ExperimentOptions options;
  options.record_auction_history = true;
  int logs = 0, traces = 0;
  options.observer = [&](const TrialDetail& d) {
    if (d.log != nullptr) ++logs;
    if (d.auction != nullptr && !d.auction->history.empty()) ++traces;
  };
  run_experiment(small(3), all_mechanisms(), options);
  EXPECT_EQ(logs, 3);
  EXPECT_EQ(traces, 3);
}

TEST(Experiment, RejectsInvalidConfig) {
  ScenarioConfig c = small(2);
  c.lambda = 2.0;
  EXPECT_THROW(run_experiment(c, {Mechanism::kHungarian}), std::invalid_argument);
}

TEST(Aggregate, MeansAndStandardErrors) {
  std::vector<TrialRecord> records;
  const double su[] = {1.0, 2.0, 4.0};
  for (int t = 0; t < 3; ++t) {
    TrialRecord h;
    h.trial = t;
    h.mechanism = Mechanism::kHungarian;
    h.welfare = 2.0;
    TrialRecord r = h;
    r.mechanism = Mechanism::kRandom;
    r.su_sum_rate = su[t];
    r.welfare = 1.0;
    r.verified = t != 0;
    records.push_back(h);
    records.push_back(r);
  }
  const auto rows = aggregate(records, {Mechanism::kHungarian, Mechanism::kRandom}, "x", 3.0);
  ASSERT_EQ(rows.size(), 2U);
  const auto& r = rows[1];
  EXPECT_EQ(r.axis, "x");
  EXPECT_EQ(r.trials, 3);
  EXPECT_DOUBLE_EQ(r.su_sum_rate.mean, 7.0 / 3.0);
  // Sample variance of {1, 2, 4} is 7/3.
  EXPECT_NEAR(r.su_sum_rate.std_error, std::sqrt(7.0 / 3.0 / 3.0), 1e-12);
  ASSERT_TRUE(r.welfare_loss.has_value());
  EXPECT_DOUBLE_EQ(r.welfare_loss->mean, 0.5);
  EXPECT_NEAR(r.verified_fraction, 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(rows[0].welfare_loss->mean, 0.0);
  EXPECT_FALSE(aggregate(records, {Mechanism::kRandom}).empty());
}

TEST(Sweep, SingleValueEqualsDirectAggregation) {
  const ScenarioConfig c = small(10);
  const auto rows = sweep(c, SweepAxis::kSnrDb, {0.0}, all_mechanisms());
  const auto direct = aggregate(run_experiment(c, all_mechanisms()), all_mechanisms(), "snr_db", 0.0);
  ASSERT_EQ(rows.size(), direct.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].su_sum_rate.mean, direct[i].su_sum_rate.mean);
    EXPECT_EQ(rows[i].welfare.std_error, direct[i].welfare.std_error);
  }
}

TEST(Sweep, AxisValues) {
  const ScenarioConfig c = small(1);
  EXPECT_EQ(with_axis_value(c, SweepAxis::kQuota, 4).quota(0), 4);
  EXPECT_DOUBLE_EQ(with_axis_value(c, SweepAxis::kAlpha, 0.02).alpha, 0.02);
  EXPECT_DOUBLE_EQ(with_axis_value(c, SweepAxis::kSnrDb, -5).snr_db, -5);
  const auto k = with_axis_value(c, SweepAxis::kNumSus, 6, 2.0);
  EXPECT_EQ(k.num_sus, 6);
  EXPECT_EQ(k.num_channels, 12);
  EXPECT_THROW(with_axis_value(c, SweepAxis::kQuota, 1.5), std::invalid_argument);
  EXPECT_THROW(with_axis_value(c, SweepAxis::kNumSus, 0), std::invalid_argument);
  ScenarioConfig mixed = c;
  mixed.quotas = {1, 2, 1, 2, 1};
  EXPECT_THROW(with_axis_value(mixed, SweepAxis::kNumSus, 3), std::invalid_argument);
  EXPECT_THROW(sweep(c, SweepAxis::kAlpha, {}, all_mechanisms()), std::invalid_argument);
  EXPECT_EQ(parse_sweep_axis("K"), SweepAxis::kNumSus);
  EXPECT_EQ(sweep_axis_name(SweepAxis::kSnrDb), "snr_db");
  EXPECT_THROW(parse_sweep_axis("beta"), std::invalid_argument);
}

TEST(Sweep, ProposalsGrowWithQuota) {
  ScenarioConfig c;
  c.trials = 200;
  const auto rows = sweep(c, SweepAxis::kQuota, {1, 2, 4, 8}, {Mechanism::kStableMatching});
  ASSERT_EQ(rows.size(), 4U);
  EXPECT_GE(rows[0].proposals.mean, 1.0);
  EXPECT_LE(rows[0].proposals.mean, 1.5);
  for (std::size_t i = 1; i < rows.size(); ++i)
    EXPECT_GE(rows[i].proposals.mean, rows[i - 1].proposals.mean);
}

TEST(Sweep, SmallerIncrementCostsRoundsAndSavesWelfare) {
  ScenarioConfig c = fixture::scenario(10, 10, 1, 43);
  c.trials = 60;
  const auto rows = sweep(c, SweepAxis::kAlpha, {0.05, 0.01, 0.001},
                          {Mechanism::kEnglishAuction, Mechanism::kHungarian});
  ASSERT_EQ(rows.size(), 6U);
  const AggregateRow* auction[3] = {&rows[0], &rows[2], &rows[4]};
  for (int i = 1; i < 3; ++i) {
    EXPECT_GT(auction[i]->iterations.mean, auction[i - 1]->iterations.mean);
    EXPECT_LT(auction[i]->welfare_loss->mean, auction[i - 1]->welfare_loss->mean);
  }
}

TEST(Region, MaximumBoundDominatesQuotedBound) {
  ScenarioConfig c = small(20);
  c.lambda_grid = {0.0, 0.5, 1.0};
  const auto points = region_boundary(c);
  ASSERT_EQ(points.size(), 6U);
  std::map<std::pair<std::string, double>, RegionPoint> by;
  for (const auto& p : points) by[{p.bound, p.lambda}] = p;
  for (double lambda : {0.0, 0.5, 1.0}) {
    const auto& q = by.at({"quoted", lambda});
    const auto& m = by.at({"maximum", lambda});
    EXPECT_GE(lambda * m.su_sum_rate + (1 - lambda) * m.pu_sum_rate,
              lambda * q.su_sum_rate + (1 - lambda) * q.pu_sum_rate - 1e-9);
  }
  EXPECT_GE(by.at({"maximum", 1.0}).su_sum_rate, by.at({"maximum", 0.0}).su_sum_rate);
}

}  // namespace
}  // namespace cogmarket
