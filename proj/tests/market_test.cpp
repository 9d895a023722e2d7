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

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "cogmarket/channel_model.hpp"
#include "cogmarket/market.hpp"
#include "cogmarket/matching.hpp"
#include "cogmarket/rng.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace cogmarket {
namespace {

Valuation valuation(const fixture::Rows& rows, std::vector<int> quotas) {
  return {fixture::matrix(rows), std::move(quotas)};
}

Valuation random_valuation(int num_sus, int num_channels, std::vector<int> quotas,
                           std::uint64_t seed, int trial, double lambda = 0.5) {
  const ScenarioConfig c = fixture::scenario(num_sus, num_channels, 1, seed);
  return make_valuation(build_utility_tables(generate_realization(c, static_cast<std::uint64_t>(trial)), c),
                        lambda, quotas);
}

std::vector<double> row_of(const Valuation& v, int k) {
  const auto r = v.value.row(static_cast<std::size_t>(k));
  return {r.begin(), r.end()};
}

PriceVector random_prices(int num_channels, double top, Rng& rng) {
  PriceVector p(static_cast<std::size_t>(num_channels));
  for (double& x : p) x = rng.uniform(1e-3, top);
  return p;
}

TEST(Valuation, WeightsSuAndPuUtilities) {
  const auto t = fixture::tables({{1.0, 2.0}}, {{3.0}, {5.0}});
  const auto v = make_valuation(t, 0.25, std::vector<int>{1});
  EXPECT_DOUBLE_EQ(v(0, 0), 0.25 * 1.0 + 0.75 * 3.0);
  EXPECT_DOUBLE_EQ(v(0, 1), 0.25 * 2.0 + 0.75 * 5.0);
  EXPECT_DOUBLE_EQ(assignment_welfare(v, std::vector<int>{-1, 0}), v(0, 1));
}

TEST(SatiatedUtility, Examples) {
  const auto v = valuation({{0.3, 0.8, 0.5}}, {1});
  EXPECT_DOUBLE_EQ(satiated_utility(v, 0, {}), 0.0);
  EXPECT_DOUBLE_EQ(satiated_utility(v, 0, {0, 1}), 0.8);
  const auto wide = valuation({{0.3, 0.8, 0.5}}, {3});
  EXPECT_DOUBLE_EQ(satiated_utility(wide, 0, {0, 2}), 0.8);
}

TEST(SatiatedUtility, EqualsBestSubsetWithinQuota) {
  for (int trial = 0; trial < 100; ++trial) {
    const int q = 1 + trial % 8;
    const auto v = random_valuation(1, 8, {q}, 21, trial);
    const auto row = row_of(v, 0);
    for (std::uint64_t a = 0; a < 256; a += 7) {
      double best = 0.0;
      for (std::uint64_t b = a;; b = (b - 1) & a) {   // every subset of a
        if (std::popcount(b) <= q) {
          double s = 0.0;
          for (int l = 0; l < 8; ++l)
            if (b >> l & 1U) s += row[static_cast<std::size_t>(l)];
          best = std::max(best, s);
        }
        if (b == 0) break;
      }
      EXPECT_NEAR(satiated_utility(v, 0, set_from_mask(a, 8)), best, 1e-12);
    }
  }
}

TEST(SatiatedUtility, Monotone) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = random_valuation(1, 8, {1 + trial % 4}, 22, trial);
    const std::uint64_t a = rng.below(256);
    const std::uint64_t b = a | rng.below(256);
    EXPECT_LE(satiated_utility(v, 0, set_from_mask(a, 8)),
              satiated_utility(v, 0, set_from_mask(b, 8)));
  }
}

TEST(NetUtility, Examples) {
  const auto v = valuation({{0.8, 0.4}}, {2});
  EXPECT_DOUBLE_EQ(net_utility(v, 0, {}, {0.3, 0.1}), 0.0);
  EXPECT_DOUBLE_EQ(net_utility(v, 0, {0, 1}, {0.0, 0.0}), 1.2);
  EXPECT_DOUBLE_EQ(net_utility(v, 0, {0}, {0.3, 0.1}), 0.5);
}

TEST(Demand, Examples) {
  const auto v = valuation({{0.5, 0.2, 0.9}}, {3});
  EXPECT_TRUE(compute_demand(v, 0, {1.0, 1.0, 1.0}).empty());
  EXPECT_EQ(compute_demand(v, 0, {0.1, 0.1, 0.1}), (DemandSet{0, 1, 2}));
  EXPECT_EQ(compute_demand(valuation({{0.5, 0.2, 0.9}}, {1}), 0, {0.1, 0.1, 0.1}), (DemandSet{2}));
  // Exactly zero surplus is not demanded.
  EXPECT_EQ(compute_demand(v, 0, {0.5, 0.1, 0.1}), (DemandSet{1, 2}));
  EXPECT_THROW(compute_demand(v, 0, {0.1, 0.0, 0.1}), std::invalid_argument);
  EXPECT_THROW(compute_demand(v, 0, {0.1, 0.1}), std::invalid_argument);
}

TEST(Demand, TiesGoToLowerIndex) {
  const auto v = valuation({{0.5, 0.5, 0.5}}, {2});
  EXPECT_EQ(compute_demand(v, 0, {0.1, 0.1, 0.1}), (DemandSet{0, 1}));
}

TEST(Demand, MinimalMaximizerOnRandomInstances) {
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const int num_channels = trial < 250 ? 10 : 1 + trial % 12;
    const int q = trial < 250 ? 3 : 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(num_channels)));
    const auto v = random_valuation(1, num_channels, {q}, 23, trial, rng.uniform());
    const auto p = random_prices(num_channels, 1.5, rng);
    const DemandSet d = compute_demand(v, 0, p);
    EXPECT_LE(static_cast<int>(d.size()), q);
    const auto maximizers = oracle::demand_maximizers(row_of(v, 0), q, p);
    const std::uint64_t dm = mask_from_set(d);
    EXPECT_NE(std::find(maximizers.begin(), maximizers.end(), dm), maximizers.end()) << trial;
    for (std::uint64_t m : maximizers) EXPECT_EQ(dm & m, dm) << trial;
  }
}

TEST(Demand, ExhaustiveDemandSetsMatchOracle) {
  Rng rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_valuation(1, 6, {2}, 24, trial);
    const auto p = random_prices(6, 1.0, rng);
    std::vector<std::uint64_t> got;
    for (const auto& s : exhaustive_demand_sets(v, 0, p)) got.push_back(mask_from_set(s));
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, oracle::demand_maximizers(row_of(v, 0), 2, p));
  }
}

TEST(Requirement, Examples) {
  EXPECT_EQ(requirement({}, {1, 2}), 0);
  EXPECT_EQ(requirement({0, 1, 2, 3}, {1, 2}), 2);
  EXPECT_EQ(requirement({0, 3}, {1, 2}), 0);
  EXPECT_EQ(requirement({2, 3}, {1, 2}), 1);
}

TEST(ExcessDemand, Examples) {
  EXPECT_TRUE(excess_demand(std::vector<DemandSet>{{0, 1}, {2}, {3}}, 4).empty());
  EXPECT_EQ(excess_demand(std::vector<DemandSet>{{3}, {3}}, 4), (ChannelSet{3}));
  EXPECT_EQ(excess_demand(std::vector<DemandSet>{{0, 3}, {1, 3}, {0}}, 4), (ChannelSet{0, 3}));
}

TEST(ExcessDemand, SmallestMaximizerOnRandomInstances) {
  Rng rng(25);
  for (int trial = 0; trial < 300; ++trial) {
    const int num_sus = trial < 150 ? 4 : 2 + trial % 4;
    const int num_channels = trial < 150 ? 6 : 2 + trial % 7;
    std::vector<int> quotas(static_cast<std::size_t>(num_sus));
    for (int& q : quotas) q = 1 + static_cast<int>(rng.below(3));
    const auto v = random_valuation(num_sus, num_channels, quotas, 25, trial);
    const auto p = random_prices(num_channels, 0.8, rng);
    std::vector<DemandSet> demands;
    std::vector<std::vector<std::uint64_t>> all;
    for (int k = 0; k < num_sus; ++k) {
      demands.push_back(compute_demand(v, k, p));
      all.push_back(oracle::demand_maximizers(row_of(v, k), quotas[static_cast<std::size_t>(k)], p));
    }
    const std::uint64_t z = mask_from_set(excess_demand(demands, num_channels));
    const auto maximizers = oracle::excess_maximizers(all, num_channels);
    EXPECT_NE(std::find(maximizers.begin(), maximizers.end(), z), maximizers.end()) << trial;
    for (std::uint64_t m : maximizers) EXPECT_EQ(z & m, z) << trial;
  }
}

AuctionOptions options(double alpha, double initial) {
  AuctionOptions o;
  o.alpha = alpha;
  o.initial_price = initial;
  return o;
}

TEST(Auction, SingleBidderStopsImmediately) {
  const auto v = valuation({{0.4, 0.9, 0.1}}, {2});
  const auto r = run_english_auction(v, options(0.01, 0.005));
  EXPECT_EQ(r.iterations, 0);
  ASSERT_EQ(r.history.size(), 1U);
  EXPECT_EQ(r.history[0].iteration, 0);
  EXPECT_EQ(r.outcome.allocation[0], (ChannelSet{0, 1}));
  EXPECT_EQ(r.outcome.unallocated, (ChannelSet{2}));
  EXPECT_DOUBLE_EQ(r.outcome.welfare, 1.3);
  EXPECT_TRUE(verify_walrasian(r.outcome, v, 0.005, 0.01));
}

TEST(Auction, TwoBiddersOneChannelPriceWalk) {
  // Both bid while 0.6 - p > 0; the price starts at 0.005 and rises by 0.01,
  // so the second bidder leaves once p = 0.005 + 0.01 * 60.
  const auto v = valuation({{1.0}, {0.6}}, {1, 1});
  const auto r = run_english_auction(v, options(0.01, 0.005));
  EXPECT_EQ(r.iterations, 60);
  EXPECT_NEAR(r.outcome.prices[0], 0.605, 1e-9);
  EXPECT_EQ(r.outcome.allocation[0], (ChannelSet{0}));
  EXPECT_TRUE(r.outcome.allocation[1].empty());
  EXPECT_EQ(r.demand_messages, 2 * 61);
  EXPECT_TRUE(verify_walrasian(r.outcome, v, 0.005, 0.01));

  AuctionOptions lazy = options(0.01, 0.005);
  lazy.broadcast_on_change_only = true;
  const auto quiet = run_english_auction(v, lazy);
  EXPECT_EQ(quiet.iterations, 60);
  EXPECT_EQ(quiet.demand_messages, 3);   // two initial broadcasts, one change
}

TEST(Auction, HistoryInvariants) {
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> quotas{1, 2, 1, 3, 2};
    const auto v = random_valuation(5, 7, quotas, 26, trial);
    const double alpha = trial % 2 == 0 ? 0.01 : 0.003;
    const auto r = run_english_auction(v, options(alpha, alpha / 2));
    ASSERT_EQ(r.history.size(), static_cast<std::size_t>(r.iterations) + 1);
    EXPECT_LE(r.iterations, auction_round_bound(v, alpha));
    for (std::size_t t = 0; t < r.history.size(); ++t) {
      const auto& s = r.history[t];
      EXPECT_EQ(s.excess, excess_demand(s.demands, 7));
      if (t + 1 == r.history.size()) {
        EXPECT_TRUE(s.excess.empty());
        break;
      }
      const auto& next = r.history[t + 1];
      for (int l = 0; l < 7; ++l) {
        const auto li = static_cast<std::size_t>(l);
        if (contains(s.excess, l))
          EXPECT_NEAR(next.prices[li] - s.prices[li], alpha, 1e-12);
        else
          EXPECT_EQ(next.prices[li], s.prices[li]);
      }
    }
    Matching m = Matching::unmatched(5, 7);
    for (int k = 0; k < 5; ++k)
      for (int l : r.outcome.allocation[static_cast<std::size_t>(k)]) m.assign(k, l);
    EXPECT_TRUE(m.respects_quotas(quotas));
  }
}

TEST(Auction, RejectsBadParameters) {
  const auto v = valuation({{1.0}}, {1});
  EXPECT_THROW(run_english_auction(v, options(0.0, 0.1)), std::invalid_argument);
  EXPECT_THROW(run_english_auction(v, options(0.1, 0.0)), std::invalid_argument);
  const auto bad = valuation({{std::nan("")}}, {1});
  EXPECT_THROW(run_english_auction(bad, options(0.1, 0.05)), std::invalid_argument);
}

TEST(Walrasian, DetectsUnsoldWantedChannel) {
  const auto v = valuation({{0.5, 0.9}}, {2});
  WalrasOutcome o;
  o.prices = {0.005, 0.005};
  o.allocation = {{1}};
  o.unallocated = {0};
  const auto check = diagnose_walrasian(o, v, 0.005, 0.01);
  EXPECT_TRUE(check.partition_valid);
  EXPECT_FALSE(check.demands_maximal);
  EXPECT_FALSE(verify_walrasian(o, v, 0.005, 0.01));
}

TEST(Walrasian, DetectsBrokenPartitionAndOverpricedLeftovers) {
  const auto v = valuation({{0.5, 0.9}, {0.4, 0.2}}, {1, 1});
  WalrasOutcome overlap;
  overlap.prices = {0.3, 0.3};
  overlap.allocation = {{1}, {1}};
  overlap.unallocated = {0};
  EXPECT_FALSE(diagnose_walrasian(overlap, v, 0.005, 0.01).partition_valid);

  WalrasOutcome pricey;
  pricey.prices = {0.45, 0.3};
  pricey.allocation = {{1}, {}};
  pricey.unallocated = {0};
  const auto check = diagnose_walrasian(pricey, v, 0.005, 0.01);
  EXPECT_TRUE(check.partition_valid);
  EXPECT_TRUE(check.demands_maximal);
  EXPECT_FALSE(check.unallocated_priced_at_floor);
}

TEST(Walrasian, AuctionReachesEquilibriumAtSmallIncrement) {
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = random_valuation(4, 8, {1, 1, 1, 1}, 27, trial);
    const auto r = run_english_auction(v, options(0.001, 0.0005));
    EXPECT_TRUE(verify_walrasian(r.outcome, v, 0.0005, 0.001 * 8)) << trial;
  }
}

TEST(Walrasian, DemandsStayMaximalWithLargerQuotas) {
  Rng rng(28);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> quotas(4);
    for (int& q : quotas) q = 1 + static_cast<int>(rng.below(3));
    const auto v = random_valuation(4, 8, quotas, 28, trial);
    const auto r = run_english_auction(v, options(0.001, 0.0005));
    const auto check = diagnose_walrasian(r.outcome, v, 0.0005, 0.001 * 8);
    EXPECT_TRUE(check.partition_valid) << trial;
    EXPECT_TRUE(check.demands_maximal) << trial;
  }
}

TEST(GrossSubstitutes, Examples) {
  const auto v = valuation({{0.5, 0.9, 0.3, 0.7}}, {2});
  const PriceVector p{0.1, 0.1, 0.1, 0.1};
  EXPECT_TRUE(gross_substitutes_check(v, 0, p, p));
  const DemandSet before = compute_demand(v, 0, p);
  PriceVector outside = p;
  for (int l = 0; l < 4; ++l)
    if (!contains(before, l)) outside[static_cast<std::size_t>(l)] += 0.2;
  EXPECT_TRUE(gross_substitutes_check(v, 0, p, outside));
  EXPECT_EQ(compute_demand(v, 0, outside), before);
  PriceVector lower = p;
  lower[0] = 0.05;
  EXPECT_THROW(gross_substitutes_check(v, 0, p, lower), std::invalid_argument);
}

TEST(GrossSubstitutes, HoldsOnRandomPricePairs) {
  Rng rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    const int num_channels = 1 + trial % 8;
    const int q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(num_channels)));
    const auto v = random_valuation(1, num_channels, {q}, 29, trial, rng.uniform());
    const auto p = random_prices(num_channels, 1.0, rng);
    PriceVector raised = p;
    for (double& x : raised)
      if (rng.below(2) == 1) x += rng.uniform(0.0, 0.8);
    ASSERT_TRUE(gross_substitutes_check(v, 0, p, raised)) << trial;
    // Independent restatement: unchanged-price channels of the demand at p
    // survive in some maximizer at p'.
    const std::uint64_t kept = [&] {
      std::uint64_t m = 0;
      for (int l : compute_demand(v, 0, p))
        if (raised[static_cast<std::size_t>(l)] == p[static_cast<std::size_t>(l)]) m |= std::uint64_t{1} << l;
      return m;
    }();
    const auto after = oracle::demand_maximizers(row_of(v, 0), q, raised);
    EXPECT_TRUE(std::any_of(after.begin(), after.end(),
                            [&](std::uint64_t m) { return (m & kept) == kept; })) << trial;
  }
}

}  // namespace
}  // namespace cogmarket
