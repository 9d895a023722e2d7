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

#include "cogmarket/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "cogmarket/assignment.hpp"
#include "cogmarket/channel_model.hpp"
#include "cogmarket/market.hpp"
#include "cogmarket/matching.hpp"
#include "cogmarket/rng.hpp"
#include "cogmarket/scenario.hpp"
#include "cogmarket/valuation.hpp"

namespace cogmarket {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

ScenarioConfig scenario(int num_sus, int num_channels, int quota, std::uint64_t seed) {
  ScenarioConfig c;
  c.num_sus = num_sus;
  c.num_channels = num_channels;
  c.quotas = {quota};
  c.seed = seed;
  c.trials = 1;
  return c;
}

UtilityTables draw_tables(const ScenarioConfig& c, int trial) {
  return build_utility_tables(generate_realization(c, static_cast<std::uint64_t>(trial)), c);
}

PriceVector random_prices(const Valuation& v, Rng& rng) {
  double top = 0.0;
  for (double x : v.value.values()) top = std::max(top, x);
  PriceVector p(idx(v.num_channels()));
  for (double& x : p) x = rng.uniform(1e-3, std::max(2e-3, top));
  return p;
}

InvariantResult check_stability(const VerificationOptions& o) {
  InvariantResult r{"stable matching: individually rational, no blocking pair, quotas"};
  const ScenarioConfig c = scenario(10, 20, 2, o.seed);
  const std::vector<int> quotas = c.quota_vector();
  for (int t = 0; t < o.instances; ++t, ++r.cases) {
    const UtilityTables tables = draw_tables(c, t);
    const auto sm = run_stable_matching(tables, quotas);
    if (!sm.matching.is_consistent() || !sm.matching.respects_quotas(quotas) ||
        !is_stable(sm.matching, tables, quotas))
      ++r.failures;
  }
  return r;
}

InvariantResult check_order_invariance(const VerificationOptions& o) {
  InvariantResult r{"stable matching: outcome independent of proposal order"};
  Rng rng(o.seed, 1, Stream::kVerification);
  for (int t = 0; t < o.instances; ++t, ++r.cases) {
    const int q = 1 + static_cast<int>(rng.below(4));
    const ScenarioConfig c = scenario(6, 12, q, o.seed + 1);
    const UtilityTables tables = draw_tables(c, t);
    const std::vector<int> quotas = c.quota_vector();
    const auto a = run_stable_matching(tables, quotas);
    const auto b = run_stable_matching(
        tables, quotas, {ProposalOrder::kRandom, rng.next()});
    if (!(a.matching == b.matching)) ++r.failures;
  }
  return r;
}

InvariantResult check_bits(const VerificationOptions& o) {
  InvariantResult r{"stable matching: per-SU bits and proposals within worst case"};
  Rng rng(o.seed, 2, Stream::kVerification);
  for (int t = 0; t < o.instances; ++t, ++r.cases) {
    const int num_channels = 1 + static_cast<int>(rng.below(20));
    const int q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(num_channels)));
    const ScenarioConfig c = scenario(1 + static_cast<int>(rng.below(10)), num_channels, q,
                                      o.seed + 2);
    const auto sm = run_stable_matching(draw_tables(c, t), c.quota_vector());
    const long bound = worst_case_bits(num_channels);
    bool ok = sm.log.bits_total <= bound * c.num_sus;
    for (int k = 0; k < c.num_sus; ++k) {
      ok = ok && sm.log.bits_per_su[idx(k)] <= bound &&
           sm.log.proposals_per_su[idx(k)] <= num_channels;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

InvariantResult check_unique_pu_optimal(const VerificationOptions& o) {
  InvariantResult r{"stable matching with quotas >= L: per-channel PU optimum"};
  const ScenarioConfig c = scenario(10, 20, 20, o.seed + 3);
  for (int t = 0; t < o.instances; ++t, ++r.cases) {
    const UtilityTables tables = draw_tables(c, t);
    const auto quotas = c.quota_vector();
    const auto sm = run_stable_matching(tables, quotas);
    if (!verify_unique_pu_optimal(sm.matching, tables, quotas)) ++r.failures;
  }
  return r;
}

InvariantResult check_demand(const VerificationOptions& o) {
  InvariantResult r{"demand oracle: maximal, contained in every maximizer, within quota"};
  Rng rng(o.seed, 4, Stream::kVerification);
  for (int t = 0; t < o.instances; ++t, ++r.cases) {
    const int num_channels = 1 + static_cast<int>(rng.below(10));
    ScenarioConfig c = scenario(2, num_channels, 1, o.seed + 4);
    c.quotas = {1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(num_channels)))};
    const Valuation v = make_valuation(draw_tables(c, t), rng.uniform(), c.quota_vector());
    const PriceVector p = random_prices(v, rng);
    const DemandSet demand = compute_demand(v, 0, p);
    const auto maximizers = exhaustive_demand_sets(v, 0, p);
    const bool among = std::find(maximizers.begin(), maximizers.end(), demand) != maximizers.end();
    const bool minimal = std::all_of(maximizers.begin(), maximizers.end(),
                                     [&](const ChannelSet& m) { return is_subset(demand, m); });
    if (!among || !minimal || static_cast<int>(demand.size()) > v.quotas[0]) ++r.failures;
  }
  return r;
}

InvariantResult check_excess(const VerificationOptions& o) {
  InvariantResult r{"excess demand: smallest maximizer of requirement minus size"};
  Rng rng(o.seed, 5, Stream::kVerification);
  for (int t = 0; t < o.instances; ++t, ++r.cases) {
    const int num_sus = 2 + static_cast<int>(rng.below(3));
    const int num_channels = 2 + static_cast<int>(rng.below(5));
    const ScenarioConfig c = scenario(num_sus, num_channels,
                                      1 + static_cast<int>(rng.below(2)), o.seed + 5);
    const Valuation v = make_valuation(draw_tables(c, t), 0.5, c.quota_vector());
    const PriceVector p = random_prices(v, rng);
    std::vector<DemandSet> demands;
    std::vector<std::vector<ChannelSet>> all_demands;
    for (int k = 0; k < num_sus; ++k) {
      demands.push_back(compute_demand(v, k, p));
      all_demands.push_back(exhaustive_demand_sets(v, k, p));
    }
    const ChannelSet excess = excess_demand(demands, num_channels);
    // Requirement from its definition: min over every demand set.
    auto score = [&](const ChannelSet& bundle) {
      int total = 0;
      for (const auto& sets : all_demands) {
        int least = std::numeric_limits<int>::max();
        for (const auto& s : sets) least = std::min(least, requirement(bundle, s));
        total += least;
      }
      return total - static_cast<int>(bundle.size());
    };
    int best = std::numeric_limits<int>::min();
    const std::uint64_t subsets = std::uint64_t{1} << num_channels;
    for (std::uint64_t mask = 0; mask < subsets; ++mask)
      best = std::max(best, score(set_from_mask(mask, num_channels)));
    bool ok = score(excess) == best;
    for (std::uint64_t mask = 0; mask < subsets && ok; ++mask) {
      const ChannelSet bundle = set_from_mask(mask, num_channels);
      if (score(bundle) == best && !is_subset(excess, bundle)) ok = false;
    }
    if (!ok) ++r.failures;
  }
  return r;
}

// Conditions (a) and (b) must hold after every auction. An unsold channel
// can keep a price above the floor when all its bidders leave within one
// price step, so condition (c) is reported as a diagnostic.
std::pair<InvariantResult, InvariantResult> check_walrasian(const VerificationOptions& o) {
  InvariantResult hard{"english auction: partition and maximal demands (tolerance alpha*L)"};
  InvariantResult floor{"english auction: unsold channels at the price floor"};
  floor.gating = false;
  const ScenarioConfig c = scenario(4, 8, 1, o.seed + 6);
  Rng rng(o.seed, 6, Stream::kVerification);
  const int cases = std::max(1, o.instances / 2);
  for (int t = 0; t < cases; ++t, ++hard.cases, ++floor.cases) {
    std::vector<int> quotas(4);
    for (int& q : quotas) q = 1 + static_cast<int>(rng.below(3));
    const Valuation v = make_valuation(draw_tables(c, t), 0.5, quotas);
    AuctionOptions ao;
    ao.alpha = 1e-3;
    ao.initial_price = ao.alpha / 2;
    ao.record_history = false;
    const auto result = run_english_auction(v, ao);
    const auto check = diagnose_walrasian(result.outcome, v, ao.initial_price, ao.alpha * 8);
    if (!check.partition_valid || !check.demands_maximal) ++hard.failures;
    if (!check.unallocated_priced_at_floor) ++floor.failures;
  }
  return {hard, floor};
}

InvariantResult check_gross_substitutes(const VerificationOptions& o) {
  InvariantResult r{"gross substitutes and monotone satiated utility"};
  Rng rng(o.seed, 7, Stream::kVerification);
  for (int t = 0; t < o.instances; ++t, ++r.cases) {
    const int num_channels = 1 + static_cast<int>(rng.below(8));
    ScenarioConfig c = scenario(1, num_channels, 1, o.seed + 7);
    c.quotas = {1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(num_channels)))};
    const Valuation v = make_valuation(draw_tables(c, t), rng.uniform(), c.quota_vector());
    const PriceVector p = random_prices(v, rng);
    PriceVector raised = p;
    for (double& x : raised)
      if (rng.below(2) == 1) x += rng.uniform(0.0, 1.0);
    bool ok = gross_substitutes_check(v, 0, p, raised);
    const std::uint64_t a = rng.below(std::uint64_t{1} << num_channels);
    const std::uint64_t b = a | rng.below(std::uint64_t{1} << num_channels);
    ok = ok && satiated_utility(v, 0, set_from_mask(a, num_channels)) <=
                   satiated_utility(v, 0, set_from_mask(b, num_channels));
    if (!ok) ++r.failures;
  }
  return r;
}

InvariantResult check_hungarian(const VerificationOptions& o) {
  InvariantResult r{"hungarian assignment equals brute-force optimum"};
  Rng rng(o.seed, 8, Stream::kVerification);
  for (int t = 0; t < o.instances; ++t, ++r.cases) {
    const int num_sus = 1 + static_cast<int>(rng.below(4));
    const int num_channels = 1 + static_cast<int>(rng.below(6));
    std::vector<int> quotas(idx(num_sus));
    for (int& q : quotas) q = 1 + static_cast<int>(rng.below(3));
    const ScenarioConfig c = scenario(num_sus, num_channels, 1, o.seed + 8);
    const Valuation v = make_valuation(draw_tables(c, t), rng.uniform(), quotas);
    const auto h = hungarian_assign(v);
    const auto b = brute_force_assign(v);
    if (std::abs(h.welfare - b.welfare) > 1e-9 * std::max(1.0, b.welfare) || !h.matching.respects_quotas(quotas)) ++r.failures;
  }
  return r;
}

InvariantResult check_tables(const VerificationOptions& o) {
  InvariantResult r{"utility tables: probabilities in [0,1], PU utility below interference-free"};
  const ScenarioConfig c = scenario(10, 20, 2, o.seed + 9);
  for (int t = 0; t < o.instances; ++t, ++r.cases) {
    const auto realization = generate_realization(c, static_cast<std::uint64_t>(t));
    const auto sensing = compute_sensing(realization, c);
    const auto tables = build_utility_tables(realization, sensing, c);
    bool ok = true;
    for (std::size_t k = 0; k < 10; ++k) {
      for (std::size_t l = 0; l < 20; ++l) {
        for (double prob : {sensing.false_alarm(k, l), sensing.detection(k, l),
                            sensing.access(k, l)})
          ok = ok && prob >= 0.0 && prob <= 1.0;
        ok = ok && std::abs(sensing.false_alarm(k, l) - c.false_alarm_target) <= 1e-9;
        ok = ok && tables.u_su(k, l) >= 0.0 && tables.u_pu(l, k) <= tables.u_pu_free[l];
      }
    }
    if (!ok) ++r.failures;
  }
  return r;
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const InvariantResult& r) { return !r.gating || r.passed(); });
}

VerificationReport run_invariant_suite(const VerificationOptions& options) {
  VerificationReport report;
  report.results.push_back(check_tables(options));
  report.results.push_back(check_stability(options));
  report.results.push_back(check_order_invariance(options));
  report.results.push_back(check_bits(options));
  report.results.push_back(check_unique_pu_optimal(options));
  report.results.push_back(check_demand(options));
  report.results.push_back(check_excess(options));
  auto [walras, floor] = check_walrasian(options);
  report.results.push_back(walras);
  report.results.push_back(floor);
  report.results.push_back(check_gross_substitutes(options));
  report.results.push_back(check_hungarian(options));
  return report;
}

}  // namespace cogmarket
